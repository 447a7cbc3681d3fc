#pragma once

#include <vector>

#include "core/distance.hpp"
#include "core/grid_set.hpp"

namespace vpmcf {

struct ComponentStats {
  int label = 0;
  int64_t cells = 0;
  double volume = 0.0;
  Vec3 barycenter{0.0, 0.0, 0.0};
  double diameter = 0.0;
  // Minimal cell-center distance to every other component, indexed by label.
  std::vector<double> gaps;
};

// Movement-limiting term of the implicit scheme: the integral of the distance
// to the interface of `reference` over the symmetric difference.  Nonnegative
// and not symmetric in its arguments.
double dissipation(const GridSet& next, const GridSet& reference);
double dissipation(const GridSet& next, const GridSet& reference,
                   const DistanceField& reference_distance);

// Face-connectivity components with volume, barycenter, boundary-cell
// diameter and pairwise gaps.  Labels follow first-touch scan order.
std::vector<ComponentStats> components(const GridSet& set);

// Symmetric Hausdorff distance between the cell-center clouds of two sets.
double hausdorff(const GridSet& a, const GridSet& b);

}  // namespace vpmcf
