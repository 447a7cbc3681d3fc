#include <cmath>
#include <vector>

#include "core/exhaustive.hpp"
#include "core/perimeter.hpp"
#include "core/rng.hpp"
#include "core/set_ops.hpp"
#include "core/step.hpp"
#include "doctest.h"

namespace {

using namespace vpmcf;

DistanceField synthetic_field(const GridGeometry& g, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<double> values(static_cast<size_t>(g.cell_count()));
  for (auto& v : values) v = rng.uniform(lo, hi);
  return DistanceField(g, std::move(values));
}

}  // namespace

TEST_CASE("step energy of the reference set is its perimeter") {
  const auto g = GridGeometry::centered(2, {48, 48, 1}, 1.0);
  GridSet e(g);
  e.paint_ball({0.0, 0.0, 0.0}, 10.0, true);
  CHECK(step_energy(e, e, 0.7) == doctest::Approx(perimeter(e)).epsilon(1e-12));
}

TEST_CASE("step energy of a grown ring equals the direct cell sum") {
  const auto g = GridGeometry::centered(2, {48, 48, 1}, 1.0);
  GridSet e(g);
  e.paint_ball({0.0, 0.0, 0.0}, 10.0, true);
  const auto d = signed_distance(e);

  // grow by one full ring of outside cells adjacent to the set
  GridSet f = e;
  Index3 idx{0, 0, 0};
  for (idx[0] = 1; idx[0] < g.dims[0] - 1; ++idx[0]) {
    for (idx[1] = 1; idx[1] < g.dims[1] - 1; ++idx[1]) {
      if (e.at(idx)) continue;
      bool adjacent = false;
      for (int k = 0; k < 2; ++k) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          Index3 nb = idx;
          nb[k] += sgn;
          if (g.contains(nb) && e.at(nb)) adjacent = true;
        }
      }
      if (adjacent) f.set(idx, true);
    }
  }

  double ring_sum = 0.0;
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    if (f.at(lin) && !e.at(lin)) ring_sum += std::abs(d.at(lin)) * g.cell_volume();
  }
  const double h = 1.0;
  CHECK(step_energy(f, e, h) == doctest::Approx(perimeter(f) + ring_sum / h).epsilon(1e-12));
}

TEST_CASE("step energy dissipation part scales linearly in 1/h") {
  const auto g = GridGeometry::centered(2, {32, 32, 1}, 1.0);
  GridSet e(g), f(g);
  e.paint_ball({0.0, 0.0, 0.0}, 8.0, true);
  f.paint_ball({1.0, 0.0, 0.0}, 8.0, true);
  const double h = 0.8;
  const double d1 = step_energy(f, e, h) - perimeter(f);
  const double d2 = step_energy(f, e, 2.0 * h) - perimeter(f);
  CHECK(d2 == doctest::Approx(0.5 * d1).epsilon(1e-12));
  CHECK_THROWS_AS(step_energy(f, e, 0.0), Error);
}

TEST_CASE("solve_at_lambda hits the empty and full extremes") {
  Rng rng(1);
  const auto g = GridGeometry::centered(2, {10, 10, 1}, 1.0);
  const auto d = synthetic_field(g, rng);
  const double h = 1.0;
  double lo = 0.0, hi = 0.0;
  auto_lambda_bracket(d, h, lo, hi);

  const GridSet empty = solve_at_lambda(d, h, lo);
  CHECK(empty.count() == 0);

  const GridSet full = solve_at_lambda(d, h, hi);
  CHECK(full.count() == (g.dims[0] - 2) * (g.dims[1] - 2));
  CHECK_FALSE(full.touches_rim(1));
}

TEST_CASE("solve_at_lambda matches exhaustive search on a 5x5 grid") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = GridGeometry::centered(2, {5, 5, 1}, 1.0);
    const auto d = synthetic_field(g, rng);
    const double h = 1.0, lambda = 0.3;
    const GridSet cut = solve_at_lambda(d, h, lambda);
    const auto oracle = oracle_lambda(d, h, lambda);
    CHECK(cut == oracle.best);
  }
}

TEST_CASE("solve_at_lambda volumes are monotone in lambda") {
  Rng rng(12);
  const auto g = GridGeometry::centered(2, {12, 12, 1}, 1.0);
  const auto d = synthetic_field(g, rng);
  const double h = 0.5;
  double lo = 0.0, hi = 0.0;
  auto_lambda_bracket(d, h, lo, hi);
  int64_t last = -1;
  for (int i = 0; i <= 24; ++i) {
    const double lambda = lo + (hi - lo) * i / 24.0;
    const int64_t v = solve_at_lambda(d, h, lambda).count();
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("solve_at_lambda is deterministic") {
  Rng rng(31);
  const auto g = GridGeometry::centered(2, {9, 9, 1}, 1.0);
  const auto d = synthetic_field(g, rng);
  const GridSet a = solve_at_lambda(d, 1.0, 0.1);
  const GridSet b = solve_at_lambda(d, 1.0, 0.1);
  CHECK(a == b);
}

TEST_CASE("find_lambda recovers the ball multiplier") {
  const double spacing = 1.0;
  const double radius = 24.0 * spacing;
  const auto g = GridGeometry::centered(2, {96, 96, 1}, spacing);
  GridSet e(g);
  e.paint_ball({0.0, 0.0, 0.0}, radius, true);

  StepConfig cfg;
  cfg.h = 0.1 * radius * radius;
  cfg.target_volume = e.volume();
  const auto r = step(e, cfg);
  const double expected = 1.0 / radius;  // curvature of the fixed disk
  CHECK(std::abs(r.lambda - expected) <= 0.2 * expected);
  CHECK(r.volume == e.volume());
  CHECK(r.energy == doctest::Approx(r.perimeter + r.dissipation / cfg.h).epsilon(1e-12));
}

TEST_CASE("find_lambda matches exhaustive search at fixed volume") {
  // Synthetic instances keep the signed-distance convention: the previous
  // set is exactly the region of negative field values, so the cut's linear
  // term and the step energy differ by a constant.
  Rng rng(1234);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = GridGeometry::centered(2, {6, 6, 1}, 1.0);
    const double shift = rng.uniform(-0.6, 0.6);
    std::vector<double> values(static_cast<size_t>(g.cell_count()));
    GridSet e(g);
    Index3 idx{0, 0, 0};
    for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
      for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
        const bool rim = idx[0] == 0 || idx[1] == 0 || idx[0] == g.dims[0] - 1 ||
                         idx[1] == g.dims[1] - 1;
        double v = rng.uniform(-1.0, 1.0) + shift;
        if (rim) v = std::abs(v) + 0.25;  // previous set stays off the rim
        values[static_cast<size_t>(g.linear(idx))] = v;
        e.set(idx, v < 0.0);
      }
    }
    const int64_t m = e.count();
    if (m == 0 || m == (g.dims[0] - 2) * (g.dims[1] - 2)) continue;
    const DistanceField d(g, values);

    StepConfig cfg;
    cfg.h = 1.0;
    cfg.target_volume = static_cast<double>(m) * g.cell_volume();
    const auto r = find_lambda(e, d, cfg);
    const auto oracle = oracle_volume(e, d, cfg.h, m);
    CHECK(r.next.count() == m);
    CHECK(r.energy == oracle.energy);
    CHECK(r.next == oracle.best);
    ++compared;
  }
  CHECK(compared >= 30);
}

TEST_CASE("find_lambda reports bracket failure on a hopeless bracket") {
  const auto g = GridGeometry::centered(2, {24, 24, 1}, 1.0);
  GridSet e(g);
  e.paint_ball({0.0, 0.0, 0.0}, 6.0, true);
  StepConfig cfg;
  cfg.h = 10.0;
  cfg.target_volume = e.volume();
  cfg.lambda_lo = 1e6;  // both ends give the full interior
  cfg.lambda_hi = 1e6 + 1.0;
  CHECK_THROWS_WITH_AS(step(e, cfg), doctest::Contains("bracket"), Error);
}

TEST_CASE("a disk is nearly fixed under one step") {
  const double spacing = 1.0;
  const double radius = 24.0 * spacing;
  const auto g = GridGeometry::centered(2, {128, 128, 1}, spacing);
  GridSet e(g);
  e.paint_ball({0.0, 0.0, 0.0}, radius, true);
  StepConfig cfg;
  cfg.h = 0.1 * radius * radius;
  cfg.target_volume = e.volume();
  const auto r = step(e, cfg);
  CHECK(hausdorff(r.next, e) <= 2.0 * spacing);
}

TEST_CASE("two far disks are both nearly fixed under one step") {
  const double spacing = 1.0;
  const double radius = 12.0 * spacing;
  const auto g = GridGeometry::centered(2, {160, 96, 1}, spacing);
  GridSet e(g);
  e.paint_ball({-3.0 * radius, 0.0, 0.0}, radius, true);
  e.paint_ball({3.0 * radius, 0.0, 0.0}, radius, true);
  StepConfig cfg;
  cfg.h = 0.1 * radius * radius;
  cfg.target_volume = e.volume();
  const auto r = step(e, cfg);
  CHECK(hausdorff(r.next, e) <= 2.0 * spacing);
  CHECK(components(r.next).size() == 2);
}

TEST_CASE("an ellipse strictly dissipates and loses perimeter") {
  const auto g = GridGeometry::centered(2, {128, 96, 1}, 1.0);
  GridSet e(g);
  e.paint_ellipsoid({0.0, 0.0, 0.0}, {40.0, 20.0, 1.0}, true);
  StepConfig cfg;
  cfg.h = 120.0;
  cfg.target_volume = e.volume();
  const auto r = step(e, cfg);
  CHECK(r.dissipation > 0.0);
  CHECK(r.perimeter < perimeter(e));
}

TEST_CASE("a tiny blob step matches exhaustive search") {
  // coarse instance: 6x6 grid, 4x4 free interior, blob of 5 cells
  Rng rng(77);
  const auto g = GridGeometry::centered(2, {6, 6, 1}, 1.0);
  GridSet e(g);
  e.set(Index3{2, 2, 0}, true);
  e.set(Index3{2, 3, 0}, true);
  e.set(Index3{3, 2, 0}, true);
  e.set(Index3{3, 3, 0}, true);
  e.set(Index3{1, 2, 0}, true);
  StepConfig cfg;
  cfg.h = 2.0;
  cfg.target_volume = e.volume();
  const auto r = step(e, cfg);
  const auto oracle = oracle_volume(e, signed_distance(e), cfg.h, e.count());
  CHECK(r.energy == oracle.energy);
  CHECK(r.next == oracle.best);
}

TEST_CASE("step is equivariant under whole-cell translations") {
  const auto g = GridGeometry::centered(2, {64, 64, 1}, 1.0);
  GridSet e(g);
  e.paint_ellipsoid({-2.0, 1.0, 0.0}, {9.0, 5.0, 1.0}, true);
  StepConfig cfg;
  cfg.h = 20.0;
  cfg.target_volume = e.volume();
  const auto r0 = step(e, cfg);
  const Index3 shift{2, 1, 0};
  const auto r1 = step(e.translated(shift), cfg);
  CHECK(r1.next == r0.next.translated(shift));
  // the automatic bracket shifts with the grid-dependent distance extremes,
  // so the collapsed multiplier agrees only to bracket resolution
  CHECK(r1.lambda == doctest::Approx(r0.lambda).epsilon(1e-9));
}
