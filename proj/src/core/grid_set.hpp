#pragma once

#include <cstdint>
#include <vector>

#include "core/geometry.hpp"

namespace vpmcf {

// Binary occupancy mask on a uniform grid.  A cell belongs to the set iff its
// mask byte is nonzero.  Membership of a physical point is decided by the
// cell-center rule used by all shape painters: a cell is inside a shape iff
// its center is.
class GridSet {
 public:
  GridSet() = default;
  explicit GridSet(const GridGeometry& geometry)
      : geometry_(geometry), mask_(static_cast<size_t>(geometry.cell_count()), 0) {}

  const GridGeometry& geometry() const { return geometry_; }
  const std::vector<uint8_t>& mask() const { return mask_; }
  std::vector<uint8_t>& mask() { return mask_; }

  bool at(int64_t lin) const { return mask_[static_cast<size_t>(lin)] != 0; }
  bool at(const Index3& idx) const { return at(geometry_.linear(idx)); }
  void set(int64_t lin, bool value) { mask_[static_cast<size_t>(lin)] = value ? 1 : 0; }
  void set(const Index3& idx, bool value) { set(geometry_.linear(idx), value); }

  int64_t cell_count() const { return geometry_.cell_count(); }

  int64_t count() const {
    int64_t n = 0;
    for (uint8_t v : mask_) n += (v != 0);
    return n;
  }

  double volume() const { return static_cast<double>(count()) * geometry_.cell_volume(); }

  bool empty() const { return count() == 0; }
  bool full() const { return count() == cell_count(); }

  bool operator==(const GridSet& other) const {
    if (!(geometry_ == other.geometry_)) return false;
    for (size_t i = 0; i < mask_.size(); ++i) {
      if ((mask_[i] != 0) != (other.mask_[i] != 0)) return false;
    }
    return true;
  }

  // True iff some set cell lies within `margin` cells of the grid boundary.
  bool touches_rim(int64_t margin) const;

  // Paint helpers; `value` true adds cells, false removes them.
  void paint_ball(const Vec3& center, double radius, bool value);
  void paint_ellipsoid(const Vec3& center, const Vec3& semi_axes, bool value);
  void paint_box(const Vec3& lo, const Vec3& hi, bool value);

  GridSet translated(const Index3& shift) const;

 private:
  GridGeometry geometry_;
  std::vector<uint8_t> mask_;
};

}  // namespace vpmcf
