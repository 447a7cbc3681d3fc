#include "core/set_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vpmcf {

double dissipation(const GridSet& next, const GridSet& reference) {
  return dissipation(next, reference, signed_distance(reference));
}

double dissipation(const GridSet& next, const GridSet& reference,
                   const DistanceField& reference_distance) {
  require_same_geometry(next.geometry(), reference.geometry());
  require_same_geometry(next.geometry(), reference_distance.geometry());
  const double cell = next.geometry().cell_volume();
  double total = 0.0;
  const int64_t n = next.cell_count();
  for (int64_t lin = 0; lin < n; ++lin) {
    if (next.at(lin) != reference.at(lin)) total += std::abs(reference_distance.at(lin));
  }
  return total * cell;
}

namespace {

// Face neighbors (4 in 2D, 6 in 3D).
std::vector<Index3> face_offsets(int ndim) {
  std::vector<Index3> out;
  for (int k = 0; k < ndim; ++k) {
    Index3 p{0, 0, 0};
    p[k] = 1;
    out.push_back(p);
    p[k] = -1;
    out.push_back(p);
  }
  return out;
}

std::vector<int> label_components(const GridSet& set, int& component_count) {
  const auto& g = set.geometry();
  const auto offsets = face_offsets(g.ndim);
  std::vector<int> labels(static_cast<size_t>(g.cell_count()), -1);
  std::vector<int64_t> queue;
  int next_label = 0;
  for (int64_t seed = 0; seed < g.cell_count(); ++seed) {
    if (!set.at(seed) || labels[static_cast<size_t>(seed)] >= 0) continue;
    labels[static_cast<size_t>(seed)] = next_label;
    queue.assign(1, seed);
    size_t head = 0;
    while (head < queue.size()) {
      const Index3 idx = g.unlinear(queue[head++]);
      for (const auto& off : offsets) {
        const Index3 nb{idx[0] + off[0], idx[1] + off[1], idx[2] + off[2]};
        if (!g.contains(nb)) continue;
        const int64_t lin = g.linear(nb);
        if (set.at(lin) && labels[static_cast<size_t>(lin)] < 0) {
          labels[static_cast<size_t>(lin)] = next_label;
          queue.push_back(lin);
        }
      }
    }
    ++next_label;
  }
  component_count = next_label;
  return labels;
}

// Cells of a component with at least one face neighbor outside the component
// (grid edge counts as outside).
bool is_boundary_cell(const GridSet& set, const std::vector<int>& labels, const Index3& idx,
                      const std::vector<Index3>& offsets) {
  const auto& g = set.geometry();
  const int label = labels[static_cast<size_t>(g.linear(idx))];
  for (const auto& off : offsets) {
    const Index3 nb{idx[0] + off[0], idx[1] + off[1], idx[2] + off[2]};
    if (!g.contains(nb)) return true;
    if (labels[static_cast<size_t>(g.linear(nb))] != label) return true;
  }
  return false;
}

}  // namespace

std::vector<ComponentStats> components(const GridSet& set) {
  const auto& g = set.geometry();
  int count = 0;
  const auto labels = label_components(set, count);
  std::vector<ComponentStats> stats(static_cast<size_t>(count));
  for (int c = 0; c < count; ++c) stats[static_cast<size_t>(c)].label = c;

  const double cell_volume = g.cell_volume();
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    const int label = labels[static_cast<size_t>(lin)];
    if (label < 0) continue;
    auto& s = stats[static_cast<size_t>(label)];
    s.cells += 1;
    const Vec3 c = g.center(g.unlinear(lin));
    for (int k = 0; k < 3; ++k) s.barycenter[k] += c[k];
  }
  for (auto& s : stats) {
    s.volume = static_cast<double>(s.cells) * cell_volume;
    for (int k = 0; k < 3; ++k) s.barycenter[k] /= static_cast<double>(s.cells);
  }

  // Boundary cells per component; diameters and pairwise gaps are exact
  // maxima/minima over cell centers and both are attained on boundary cells.
  const auto offsets = face_offsets(g.ndim);
  std::vector<std::vector<Vec3>> boundary(static_cast<size_t>(count));
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        const int label = labels[static_cast<size_t>(g.linear(idx))];
        if (label < 0) continue;
        if (is_boundary_cell(set, labels, idx, offsets)) {
          boundary[static_cast<size_t>(label)].push_back(g.center(idx));
        }
      }
    }
  }

  for (int c = 0; c < count; ++c) {
    const auto& pts = boundary[static_cast<size_t>(c)];
    double best = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i + 1; j < pts.size(); ++j) {
        best = std::max(best, norm(sub(pts[i], pts[j])));
      }
    }
    stats[static_cast<size_t>(c)].diameter = best;
  }

  for (int a = 0; a < count; ++a) {
    stats[static_cast<size_t>(a)].gaps.assign(static_cast<size_t>(count),
                                              std::numeric_limits<double>::infinity());
    stats[static_cast<size_t>(a)].gaps[static_cast<size_t>(a)] = 0.0;
  }
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : boundary[static_cast<size_t>(a)]) {
        for (const auto& q : boundary[static_cast<size_t>(b)]) {
          best = std::min(best, norm(sub(p, q)));
        }
      }
      stats[static_cast<size_t>(a)].gaps[static_cast<size_t>(b)] = best;
      stats[static_cast<size_t>(b)].gaps[static_cast<size_t>(a)] = best;
    }
  }
  return stats;
}

double hausdorff(const GridSet& a, const GridSet& b) {
  require_same_geometry(a.geometry(), b.geometry());
  require(a.count() > 0 && b.count() > 0, ErrorCode::invalid_argument,
          "hausdorff distance requires nonempty sets");
  const auto da = center_distance_field(a);
  const auto db = center_distance_field(b);
  double worst = 0.0;
  const int64_t n = a.cell_count();
  for (int64_t lin = 0; lin < n; ++lin) {
    if (a.at(lin)) worst = std::max(worst, db[static_cast<size_t>(lin)]);
    if (b.at(lin)) worst = std::max(worst, da[static_cast<size_t>(lin)]);
  }
  return worst;
}

}  // namespace vpmcf
