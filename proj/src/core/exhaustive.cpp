#include "core/exhaustive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/perimeter.hpp"
#include "core/set_ops.hpp"
#include "core/step.hpp"

namespace vpmcf {

namespace {

std::vector<int64_t> interior_cells(const GridGeometry& g) {
  std::vector<int64_t> cells;
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        bool rim = false;
        for (int k = 0; k < g.ndim; ++k) {
          if (idx[k] == 0 || idx[k] == g.dims[k] - 1) rim = true;
        }
        if (!rim) cells.push_back(g.linear(idx));
      }
    }
  }
  return cells;
}

}  // namespace

OracleResult oracle_lambda(const DistanceField& d, double h, double lambda) {
  require(h > 0.0, ErrorCode::invalid_argument, "time step h must be positive");
  const auto& g = d.geometry();
  const auto cells = interior_cells(g);
  require(cells.size() <= 20, ErrorCode::invalid_argument,
          "oracle instance too large: " + std::to_string(cells.size()) +
              " free cells exceed the limit of 20");
  const double cell_volume = g.cell_volume();

  GridSet f(g);
  auto energy_of = [&](uint64_t bits) {
    double linear = 0.0;
    for (size_t i = 0; i < cells.size(); ++i) {
      const bool in = (bits >> i) & 1u;
      f.set(cells[i], in);
      if (in) linear += (d.at(cells[i]) / h - lambda) * cell_volume;
    }
    return perimeter(f) + linear;
  };

  double best_energy = std::numeric_limits<double>::infinity();
  std::vector<uint64_t> best_masks;
  const uint64_t total = uint64_t{1} << cells.size();
  for (uint64_t bits = 0; bits < total; ++bits) {
    const double e = energy_of(bits);
    if (e < best_energy) {
      best_energy = e;
      best_masks.assign(1, bits);
    } else if (e == best_energy) {
      best_masks.push_back(bits);
    }
  }

  uint64_t intersection = best_masks.front();
  for (uint64_t m : best_masks) intersection &= m;

  OracleResult out{GridSet(g), best_energy};
  for (size_t i = 0; i < cells.size(); ++i) {
    out.best.set(cells[i], (intersection >> i) & 1u);
  }
  // Ties need not be closed under intersection in floating point; report the
  // energy of the mask actually returned.
  out.energy = energy_of(intersection);
  return out;
}

OracleResult oracle_volume(const GridSet& previous, const DistanceField& d, double h,
                           int64_t target_cells) {
  require(h > 0.0, ErrorCode::invalid_argument, "time step h must be positive");
  const auto& g = previous.geometry();
  require_same_geometry(g, d.geometry());
  const auto cells = interior_cells(g);
  const int64_t n = static_cast<int64_t>(cells.size());
  require(n <= 20, ErrorCode::invalid_argument,
          "oracle instance too large: " + std::to_string(n) + " free cells exceed the limit of 20");
  require(target_cells >= 0 && target_cells <= n, ErrorCode::invalid_argument,
          "oracle target volume does not fit the free region");

  GridSet best(g);
  double best_energy = std::numeric_limits<double>::infinity();
  bool first = true;

  std::vector<int64_t> pick(static_cast<size_t>(target_cells));
  for (int64_t i = 0; i < target_cells; ++i) pick[static_cast<size_t>(i)] = i;
  GridSet f(g);
  while (true) {
    std::fill(f.mask().begin(), f.mask().end(), 0);
    for (int64_t p : pick) f.set(cells[static_cast<size_t>(p)], true);
    const double e = step_energy(f, previous, d, h);
    if (first || e < best_energy) {
      best_energy = e;
      best = f;
      first = false;
    }
    if (target_cells == 0) break;
    int64_t i = target_cells - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - target_cells + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int64_t j = i + 1; j < target_cells; ++j) {
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return {std::move(best), best_energy};
}

}  // namespace vpmcf
