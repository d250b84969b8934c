#include "fpt/difflayer.hpp"

#include <stdexcept>

namespace fpt {

Subspace image_of_subspace(const LinearMap& lambda, const Subspace& u) {
  if (lambda.width() != u.width())
    throw std::invalid_argument("image_of_subspace: width mismatch");
  Subspace img(u.width());
  for (word row : u.basis()) img.insert(lambda.apply(row));
  return img;
}

DiffusionReport check_properness(const LinearMap& lambda, const BrickLayout& layout) {
  if (lambda.width() != layout.width())
    throw std::invalid_argument("check_properness: layout width mismatch");
  if (!lambda.invertible())
    throw std::invalid_argument("check_properness: diffusion layer is singular");

  DiffusionReport r;
  r.proper = true;
  r.strongly_proper = true;
  const word all = (word(1) << layout.b) - 1;
  for (word members = 1; members < all; ++members) {
    const Subspace w = wall_subspace(layout, members);
    const Subspace img = image_of_subspace(lambda, w);
    if (r.proper && img == w) {
      r.proper = false;
      r.invariant_wall = Wall(layout, members);
    }
    if (r.strongly_proper) {
      if (auto hit = as_wall(layout, img)) {
        r.strongly_proper = false;
        r.wall_to_wall = std::make_pair(Wall(layout, members), *hit);
      }
    }
    if (!r.proper && !r.strongly_proper) break;
  }
  return r;
}

}  // namespace fpt
