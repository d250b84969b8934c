// Diffusion-layer quality: a mixing layer is proper when no wall is invariant,
// strongly proper when no wall lands on a wall at all.
#pragma once

#include <optional>
#include <utility>

#include "fpt/bitvec.hpp"

namespace fpt {

struct DiffusionReport {
  bool proper = false;
  bool strongly_proper = false;
  // witnesses, present exactly when the corresponding flag is false;
  // smallest failing member bitmask wins
  std::optional<Wall> invariant_wall;
  std::optional<std::pair<Wall, Wall>> wall_to_wall;
};

DiffusionReport check_properness(const LinearMap& lambda, const BrickLayout& layout);
Subspace image_of_subspace(const LinearMap& lambda, const Subspace& u);

}  // namespace fpt
