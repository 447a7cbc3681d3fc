#pragma once

#include "core/distance.hpp"
#include "core/grid_set.hpp"

namespace vpmcf {

struct OracleResult {
  GridSet best;
  double energy = 0.0;
};

// Brute-force reference minimizers over all masks of the grid interior (the
// one-cell rim stays empty).  Only feasible for tiny instances; both throw
// ErrorCode::invalid_argument when the enumeration would be too large.

// Minimizes perimeter(F) + sum_{F} (d/h - lambda) * spacing^ndim.  Among
// minimizers returns their intersection, matching the inclusion-minimal
// convention of the cut solver.
OracleResult oracle_lambda(const DistanceField& d, double h, double lambda);

// Minimizes step energy perimeter(F) + dissipation(F, previous)/h over all
// interior masks with exactly `target_cells` cells.  Ties keep the first
// combination in lexicographic cell order.
OracleResult oracle_volume(const GridSet& previous, const DistanceField& d, double h,
                           int64_t target_cells);

}  // namespace vpmcf
