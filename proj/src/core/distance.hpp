#pragma once

#include <vector>

#include "core/grid_set.hpp"

namespace vpmcf {

// Per-cell signed Euclidean distance to the set interface.  The interface is
// the union of faces separating a set cell from a non-set cell; distances are
// measured from cell centers to the nearest point of that face union.  Values
// are negative on set cells and positive elsewhere.
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(const GridGeometry& geometry, std::vector<double> values)
      : geometry_(geometry), values_(std::move(values)) {}

  const GridGeometry& geometry() const { return geometry_; }
  const std::vector<double>& values() const { return values_; }
  double at(int64_t lin) const { return values_[static_cast<size_t>(lin)]; }
  double at(const Index3& idx) const { return at(geometry_.linear(idx)); }

  double min_value() const;
  double max_value() const;

 private:
  GridGeometry geometry_;
  std::vector<double> values_;
};

// Exact signed distance transform.  Throws ErrorCode::no_boundary when the
// set or its complement is empty.
DistanceField signed_distance(const GridSet& set);

// Exact Euclidean distance between cell centers and the centers of set cells,
// computed on the cell lattice.  Infinite entries (empty set) are rejected.
// Used by the Hausdorff metric.
std::vector<double> center_distance_field(const GridSet& set);

}  // namespace vpmcf
