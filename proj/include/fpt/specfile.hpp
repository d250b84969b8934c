// JSON interchange: cipher spec files, S-box files, chain dumps, and
// machine-readable reports. Field errors carry the path of the bad entry.
#pragma once

#include <string>

#include "json.hpp"

#include "fpt/feistel.hpp"
#include "fpt/sbox.hpp"
#include "fpt/trapdoor.hpp"

namespace fpt {

using json = nlohmann::ordered_json;

json load_json(const std::string& path);
void save_json(const std::string& path, const json& doc);

// {"layout": {"s", "b"}, "key_mode": "after"|"before", "rounds": [
//   {"sboxes": [[...], ...], "lambda": [row, ...]} or {"table": [...]}]}
CipherSpec spec_from_json(const json& doc);
json spec_to_json(const CipherSpec& spec);
CipherSpec load_spec(const std::string& path);

// {"table": [...]}; width is the log of the table size
SBox sbox_from_json(const json& doc);
SBox load_sbox(const std::string& path);

// {"pair_width", "links": [[basis words], ...], "verified": one flag per round}
json chain_to_json(const PartitionChain& chain);
PartitionChain chain_from_json(const json& doc);

json exclusion_to_json(const ExclusionReport& report);
json attack_to_json(const AttackReport& report);

}  // namespace fpt
