#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "core/error.hpp"

namespace vpmcf {

using Vec3 = std::array<double, 3>;
using Index3 = std::array<int64_t, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

// Uniform cell grid in 2 or 3 dimensions. `origin` is the corner of the grid
// box: the center of cell (i0, i1[, i2]) sits at origin[k] + (ik + 0.5) * spacing.
// Unused trailing components of dims are 1 and of origin are 0.  Cells are
// stored in C order with the last axis varying fastest.
struct GridGeometry {
  int ndim = 2;
  Index3 dims{1, 1, 1};
  double spacing = 1.0;
  Vec3 origin{0.0, 0.0, 0.0};

  static GridGeometry make(int ndim, Index3 dims, double spacing, Vec3 origin) {
    GridGeometry g;
    g.ndim = ndim;
    g.dims = dims;
    g.spacing = spacing;
    g.origin = origin;
    for (int k = ndim; k < 3; ++k) {
      g.dims[k] = 1;
      g.origin[k] = 0.0;
    }
    g.validate();
    return g;
  }

  // Centered variant: the grid box is symmetric about the coordinate origin.
  static GridGeometry centered(int ndim, Index3 dims, double spacing) {
    Vec3 origin{0.0, 0.0, 0.0};
    for (int k = 0; k < ndim; ++k) origin[k] = -0.5 * static_cast<double>(dims[k]) * spacing;
    return make(ndim, dims, spacing, origin);
  }

  void validate() const {
    require(ndim == 2 || ndim == 3, ErrorCode::invalid_argument,
            "grid dimension must be 2 or 3, got " + std::to_string(ndim));
    require(spacing > 0.0, ErrorCode::invalid_argument, "grid spacing must be positive");
    for (int k = 0; k < ndim; ++k) {
      require(dims[k] >= 4, ErrorCode::invalid_argument,
              "grid must have at least 4 cells per axis, got " + std::to_string(dims[k]) +
                  " on axis " + std::to_string(k));
    }
  }

  int64_t cell_count() const { return dims[0] * dims[1] * dims[2]; }

  double cell_volume() const {
    double v = 1.0;
    for (int k = 0; k < ndim; ++k) v *= spacing;
    return v;
  }

  int64_t linear(const Index3& idx) const {
    return (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2];
  }

  Index3 unlinear(int64_t lin) const {
    Index3 idx{0, 0, 0};
    idx[2] = lin % dims[2];
    lin /= dims[2];
    idx[1] = lin % dims[1];
    idx[0] = lin / dims[1];
    return idx;
  }

  bool contains(const Index3& idx) const {
    for (int k = 0; k < ndim; ++k) {
      if (idx[k] < 0 || idx[k] >= dims[k]) return false;
    }
    return true;
  }

  Vec3 center(const Index3& idx) const {
    Vec3 c{0.0, 0.0, 0.0};
    for (int k = 0; k < ndim; ++k) {
      c[k] = origin[k] + (static_cast<double>(idx[k]) + 0.5) * spacing;
    }
    return c;
  }

  bool operator==(const GridGeometry& other) const {
    return ndim == other.ndim && dims == other.dims && spacing == other.spacing &&
           origin == other.origin;
  }
};

inline void require_same_geometry(const GridGeometry& a, const GridGeometry& b) {
  require(a == b, ErrorCode::geometry_mismatch, "grid geometries do not match");
}

}  // namespace vpmcf
