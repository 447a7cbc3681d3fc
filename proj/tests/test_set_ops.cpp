#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/rng.hpp"
#include "core/set_ops.hpp"
#include "doctest.h"

namespace {

using namespace vpmcf;

GridSet random_set(const GridGeometry& g, Rng& rng, double fill = 0.5) {
  GridSet s(g);
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) s.set(lin, rng.next_double() < fill);
  return s;
}

// Reference flood fill on an explicit stack, independent of the BFS labeling.
std::vector<int> reference_labels(const GridSet& set) {
  const auto& g = set.geometry();
  std::vector<int> labels(static_cast<size_t>(g.cell_count()), -1);
  int next = 0;
  for (int64_t seed = 0; seed < g.cell_count(); ++seed) {
    if (!set.at(seed) || labels[static_cast<size_t>(seed)] >= 0) continue;
    std::vector<int64_t> stack{seed};
    while (!stack.empty()) {
      const int64_t lin = stack.back();
      stack.pop_back();
      if (labels[static_cast<size_t>(lin)] >= 0) continue;
      labels[static_cast<size_t>(lin)] = next;
      const Index3 idx = g.unlinear(lin);
      for (int k = 0; k < g.ndim; ++k) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          Index3 nb = idx;
          nb[k] += sgn;
          if (g.contains(nb) && set.at(nb)) stack.push_back(g.linear(nb));
        }
      }
    }
    ++next;
  }
  return labels;
}

}  // namespace

TEST_CASE("dissipation vanishes only on matching sets and is asymmetric") {
  const auto g = GridGeometry::centered(2, {32, 32, 1}, 1.0);
  GridSet e(g);
  e.paint_ball({0.0, 0.0, 0.0}, 8.0, true);
  CHECK(dissipation(e, e) == 0.0);

  GridSet f = e;
  f.paint_ball({0.0, 0.0, 0.0}, 11.0, true);
  const double d_fe = dissipation(f, e);
  const double d_ef = dissipation(e, f);
  CHECK(d_fe > 0.0);
  CHECK(d_ef > 0.0);
  CHECK(d_fe != d_ef);
}

TEST_CASE("dissipation of concentric disks matches the annulus integral") {
  // D(B_r2, B_r1) = 2 pi [ (r2^3 - r1^3)/3 - r1 (r2^2 - r1^2)/2 ] = 5 pi / 3
  // for r1 = 1, r2 = 2.
  const double spacing = 1.0 / 64.0;
  const auto g = GridGeometry::centered(2, {320, 320, 1}, spacing);
  GridSet inner(g), outer(g);
  inner.paint_ball({0.0, 0.0, 0.0}, 1.0, true);
  outer.paint_ball({0.0, 0.0, 0.0}, 2.0, true);
  const double expected = 5.0 * M_PI / 3.0;
  CHECK(dissipation(outer, inner) == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("dissipation equals the brute-force cell sum on random pairs") {
  Rng rng(5);
  const auto g = GridGeometry::centered(2, {8, 8, 1}, 0.5);
  for (int trial = 0; trial < 6; ++trial) {
    GridSet e = random_set(g, rng);
    GridSet f = random_set(g, rng);
    if (e.empty() || e.full()) continue;
    const auto d = signed_distance(e);
    double expected = 0.0;
    for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
      if (e.at(lin) != f.at(lin)) expected += std::abs(d.at(lin)) * g.cell_volume();
    }
    CHECK(dissipation(f, e) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("dissipation requires matching geometries") {
  const auto g1 = GridGeometry::centered(2, {8, 8, 1}, 1.0);
  const auto g2 = GridGeometry::centered(2, {8, 8, 1}, 2.0);
  GridSet a(g1), b(g2);
  a.set(Index3{4, 4, 0}, true);
  b.set(Index3{4, 4, 0}, true);
  CHECK_THROWS_AS(dissipation(a, b), Error);
}

TEST_CASE("components of a rectangle") {
  const auto g = GridGeometry::centered(2, {32, 32, 1}, 1.0);
  GridSet s(g);
  s.paint_box({-6.0, -4.0, 0.0}, {6.0, 4.0, 0.0}, true);
  const auto comps = components(s);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].volume == s.volume());
  CHECK(std::abs(comps[0].barycenter[0]) < 1e-9);
  CHECK(std::abs(comps[0].barycenter[1]) < 1e-9);
}

TEST_CASE("components of two disjoint disks") {
  const auto g = GridGeometry::centered(2, {64, 64, 1}, 1.0);
  GridSet s(g);
  const Vec3 c1{-12.0, 0.0, 0.0}, c2{14.0, 0.0, 0.0};
  const double r1 = 6.0, r2 = 6.0;
  s.paint_ball(c1, r1, true);
  s.paint_ball(c2, r2, true);
  const auto comps = components(s);
  REQUIRE(comps.size() == 2);
  CHECK(norm(sub(comps[0].barycenter, c1)) <= g.spacing);
  CHECK(norm(sub(comps[1].barycenter, c2)) <= g.spacing);
  const double analytic_gap = norm(sub(c2, c1)) - r1 - r2;
  CHECK(std::abs(comps[0].gaps[1] - analytic_gap) <= 2.0 * g.spacing);
  CHECK(comps[0].gaps[1] == comps[1].gaps[0]);
  // volumes sum to the total and the union barycenter is the weighted mean
  CHECK(comps[0].volume + comps[1].volume == s.volume());
  Vec3 weighted{0, 0, 0};
  for (const auto& c : comps) {
    weighted = add(weighted, scale(c.barycenter, c.volume / s.volume()));
  }
  Vec3 direct{0, 0, 0};
  int64_t n = 0;
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    if (s.at(lin)) {
      direct = add(direct, g.center(g.unlinear(lin)));
      ++n;
    }
  }
  direct = scale(direct, 1.0 / static_cast<double>(n));
  CHECK(norm(sub(weighted, direct)) < 1e-9);
}

TEST_CASE("component labels agree with a reference flood fill") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = GridGeometry::centered(2, {12, 12, 1}, 1.0);
    GridSet s = random_set(g, rng, 0.45);
    const auto comps = components(s);
    const auto ref = reference_labels(s);
    const int ref_count = ref.empty() ? 0 : *std::max_element(ref.begin(), ref.end()) + 1;
    CHECK(static_cast<int>(comps.size()) == ref_count);
    int64_t total = 0;
    for (const auto& c : comps) total += c.cells;
    CHECK(total == s.count());
  }
}

TEST_CASE("hausdorff distance basics") {
  const auto g = GridGeometry::centered(2, {32, 32, 1}, 1.0);
  GridSet a(g);
  a.paint_ball({0.0, 0.0, 0.0}, 6.0, true);
  CHECK(hausdorff(a, a) == 0.0);

  const GridSet b = a.translated({3, 0, 0});
  CHECK(hausdorff(a, b) == doctest::Approx(3.0 * g.spacing).epsilon(1e-12));

  GridSet empty(g);
  CHECK_THROWS_AS(hausdorff(a, empty), Error);
}

TEST_CASE("hausdorff matches the brute-force double maximum") {
  Rng rng(23);
  const auto g = GridGeometry::centered(2, {8, 8, 1}, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    GridSet a = random_set(g, rng, 0.4);
    GridSet b = random_set(g, rng, 0.4);
    if (a.empty() || b.empty()) continue;
    double expected = 0.0;
    for (int64_t i = 0; i < g.cell_count(); ++i) {
      if (!a.at(i) && !b.at(i)) continue;
      for (int pass = 0; pass < 2; ++pass) {
        const GridSet& from = pass == 0 ? a : b;
        const GridSet& to = pass == 0 ? b : a;
        if (!from.at(i)) continue;
        double nearest = std::numeric_limits<double>::infinity();
        for (int64_t j = 0; j < g.cell_count(); ++j) {
          if (!to.at(j)) continue;
          nearest = std::min(nearest,
                             norm(sub(g.center(g.unlinear(i)), g.center(g.unlinear(j)))));
        }
        expected = std::max(expected, nearest);
      }
    }
    CHECK(hausdorff(a, b) == doctest::Approx(expected).epsilon(1e-12));
  }
}
