#include "core/grid_set.hpp"

namespace vpmcf {

bool GridSet::touches_rim(int64_t margin) const {
  const auto& g = geometry_;
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        bool near_rim = false;
        for (int k = 0; k < g.ndim; ++k) {
          if (idx[k] < margin || idx[k] >= g.dims[k] - margin) near_rim = true;
        }
        if (near_rim && at(idx)) return true;
      }
    }
  }
  return false;
}

namespace {

template <typename Predicate>
void paint(GridSet& set, bool value, Predicate inside) {
  const auto& g = set.geometry();
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        if (inside(g.center(idx))) set.set(idx, value);
      }
    }
  }
}

}  // namespace

void GridSet::paint_ball(const Vec3& center, double radius, bool value) {
  require(radius > 0.0, ErrorCode::invalid_argument, "ball radius must be positive");
  const double r2 = radius * radius;
  paint(*this, value, [&](const Vec3& c) {
    const Vec3 d = sub(c, center);
    return dot(d, d) <= r2;
  });
}

void GridSet::paint_ellipsoid(const Vec3& center, const Vec3& semi_axes, bool value) {
  for (int k = 0; k < geometry_.ndim; ++k) {
    require(semi_axes[k] > 0.0, ErrorCode::invalid_argument, "ellipsoid semi-axes must be positive");
  }
  const int ndim = geometry_.ndim;
  paint(*this, value, [&](const Vec3& c) {
    double q = 0.0;
    for (int k = 0; k < ndim; ++k) {
      const double t = (c[k] - center[k]) / semi_axes[k];
      q += t * t;
    }
    return q <= 1.0;
  });
}

void GridSet::paint_box(const Vec3& lo, const Vec3& hi, bool value) {
  const int ndim = geometry_.ndim;
  paint(*this, value, [&](const Vec3& c) {
    for (int k = 0; k < ndim; ++k) {
      if (c[k] < lo[k] || c[k] > hi[k]) return false;
    }
    return true;
  });
}

GridSet GridSet::translated(const Index3& shift) const {
  GridSet out(geometry_);
  const auto& g = geometry_;
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        if (!at(idx)) continue;
        Index3 to{idx[0] + shift[0], idx[1] + shift[1], idx[2] + shift[2]};
        require(g.contains(to), ErrorCode::invalid_argument,
                "translation moves set cells outside the grid");
        out.set(to, true);
      }
    }
  }
  return out;
}

}  // namespace vpmcf
