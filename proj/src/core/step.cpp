#include "core/step.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "core/max_flow.hpp"
#include "core/perimeter.hpp"
#include "core/set_ops.hpp"

namespace vpmcf {

double step_energy(const GridSet& next, const GridSet& reference, double h) {
  return step_energy(next, reference, signed_distance(reference), h);
}

double step_energy(const GridSet& next, const GridSet& reference,
                   const DistanceField& reference_distance, double h) {
  require(h > 0.0, ErrorCode::invalid_argument, "time step h must be positive");
  return perimeter(next) + dissipation(next, reference, reference_distance) / h;
}

namespace {

enum class CellState : uint8_t { free_cell = 0, forced_in = 1, forced_out = 2 };

std::vector<CellState> rim_state(const GridGeometry& g) {
  std::vector<CellState> state(static_cast<size_t>(g.cell_count()), CellState::free_cell);
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        for (int k = 0; k < g.ndim; ++k) {
          if (idx[k] == 0 || idx[k] == g.dims[k] - 1) {
            state[static_cast<size_t>(g.linear(idx))] = CellState::forced_out;
            break;
          }
        }
      }
    }
  }
  return state;
}

// Minimum cut at a fixed multiplier over the cells still marked free; cells
// forced in or out are folded into the unary terms of their free neighbors.
GridSet solve_cut(const DistanceField& d, double h, double lambda,
                  const std::vector<CellState>& state) {
  const auto& g = d.geometry();
  const auto& stencil = perimeter_stencil(g.ndim);
  const double cell_volume = g.cell_volume();
  const double edge_area = std::pow(g.spacing, g.ndim - 1);

  std::vector<int32_t> id(static_cast<size_t>(g.cell_count()), -1);
  std::vector<int64_t> cells;
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    if (state[static_cast<size_t>(lin)] == CellState::free_cell) {
      id[static_cast<size_t>(lin)] = static_cast<int32_t>(cells.size());
      cells.push_back(lin);
    }
  }
  const int32_t n_free = static_cast<int32_t>(cells.size());
  const int32_t source = n_free;
  const int32_t sink = n_free + 1;

  std::vector<double> unary(static_cast<size_t>(n_free));
  for (int32_t i = 0; i < n_free; ++i) {
    const double v = d.at(cells[static_cast<size_t>(i)]);
    require(std::isfinite(v), ErrorCode::invalid_argument, "distance field has non-finite values");
    unary[static_cast<size_t>(i)] = (v / h - lambda) * cell_volume;
  }

  MaxFlow flow(n_free + 2, source, sink);
  Index3 idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < g.dims[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < g.dims[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < g.dims[2]; ++idx[2]) {
        const int64_t lin = g.linear(idx);
        const CellState sa = state[static_cast<size_t>(lin)];
        for (const auto& dir : stencil) {
          const Index3 nb{idx[0] + dir.offset[0], idx[1] + dir.offset[1], idx[2] + dir.offset[2]};
          if (!g.contains(nb)) continue;
          const int64_t nlin = g.linear(nb);
          const CellState sb = state[static_cast<size_t>(nlin)];
          const double w = dir.unit_weight * edge_area;
          if (sa == CellState::free_cell && sb == CellState::free_cell) {
            flow.add_edge(id[static_cast<size_t>(lin)], id[static_cast<size_t>(nlin)], w, w);
          } else if (sa == CellState::free_cell) {
            unary[static_cast<size_t>(id[static_cast<size_t>(lin)])] +=
                (sb == CellState::forced_in) ? -w : w;
          } else if (sb == CellState::free_cell) {
            unary[static_cast<size_t>(id[static_cast<size_t>(nlin)])] +=
                (sa == CellState::forced_in) ? -w : w;
          }
        }
      }
    }
  }
  for (int32_t i = 0; i < n_free; ++i) {
    const double u = unary[static_cast<size_t>(i)];
    if (u > 0.0) {
      flow.add_edge(i, sink, u, 0.0);
    } else if (u < 0.0) {
      flow.add_edge(source, i, -u, 0.0);
    }
  }

  flow.solve();
  const auto side = flow.min_cut_source_side();

  GridSet out(g);
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    if (state[static_cast<size_t>(lin)] == CellState::forced_in) out.set(lin, true);
  }
  for (int32_t i = 0; i < n_free; ++i) {
    if (side[static_cast<size_t>(i)]) out.set(cells[static_cast<size_t>(i)], true);
  }
  return out;
}

double stencil_total_incident_weight(const GridGeometry& g) {
  double sum = 0.0;
  for (const auto& d : perimeter_stencil(g.ndim)) sum += d.unit_weight;
  return 2.0 * sum * std::pow(g.spacing, g.ndim - 1);
}

int64_t interior_count(const GridGeometry& g) {
  int64_t n = 1;
  for (int k = 0; k < g.ndim; ++k) n *= g.dims[k] - 2;
  return n;
}

double binomial_capped(int64_t n, int64_t k, double cap) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (int64_t i = 0; i < k; ++i) {
    c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (c > cap) return cap + 1.0;
  }
  return c;
}

// Visit k-subsets of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(int64_t n, int64_t k, Visit visit) {
  std::vector<int64_t> pick(static_cast<size_t>(k));
  for (int64_t i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
  while (true) {
    visit(pick);
    int64_t i = k - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int64_t j = i + 1; j < k; ++j) {
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

void auto_lambda_bracket(const DistanceField& d, double h, double& lo, double& hi) {
  const double w = stencil_total_incident_weight(d.geometry());
  const double density = w / d.geometry().cell_volume();
  lo = d.min_value() / h - density - 1.0;
  hi = d.max_value() / h + density + 1.0;
}

GridSet solve_at_lambda(const DistanceField& d, double h, double lambda) {
  require(h > 0.0, ErrorCode::invalid_argument, "time step h must be positive");
  require(std::isfinite(lambda), ErrorCode::invalid_argument, "lambda must be finite");
  return solve_cut(d, h, lambda, rim_state(d.geometry()));
}

namespace {

struct BisectState {
  std::vector<CellState> state;
  int64_t forced_in_count = 0;
  int64_t free_count = 0;
};

void force_in(BisectState& bs, const GridSet& f) {
  for (int64_t lin = 0; lin < f.cell_count(); ++lin) {
    if (f.at(lin) && bs.state[static_cast<size_t>(lin)] == CellState::free_cell) {
      bs.state[static_cast<size_t>(lin)] = CellState::forced_in;
      ++bs.forced_in_count;
      --bs.free_count;
    }
  }
}

void force_out_complement(BisectState& bs, const GridSet& f) {
  for (int64_t lin = 0; lin < f.cell_count(); ++lin) {
    if (!f.at(lin) && bs.state[static_cast<size_t>(lin)] == CellState::free_cell) {
      bs.state[static_cast<size_t>(lin)] = CellState::forced_out;
      --bs.free_count;
    }
  }
}

// Exact energy change of flipping one cell, O(stencil).
double flip_delta(const GridSet& f, const GridSet& previous, const DistanceField& d, double h,
                  int64_t lin, bool to_value) {
  const auto& g = f.geometry();
  const auto& stencil = perimeter_stencil(g.ndim);
  const double edge_area = std::pow(g.spacing, g.ndim - 1);
  const bool cur = f.at(lin);
  if (cur == to_value) return 0.0;
  double delta = 0.0;
  const Index3 idx = g.unlinear(lin);
  for (const auto& dir : stencil) {
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      const Index3 nb{idx[0] + sgn * dir.offset[0], idx[1] + sgn * dir.offset[1],
                      idx[2] + sgn * dir.offset[2]};
      if (!g.contains(nb)) continue;
      const bool nv = f.at(nb);
      delta += dir.unit_weight * edge_area *
               (static_cast<double>(to_value != nv) - static_cast<double>(cur != nv));
    }
  }
  const double diss = std::abs(d.at(lin)) * g.cell_volume() / h;
  const bool was_diff = cur != previous.at(lin);
  const bool now_diff = to_value != previous.at(lin);
  delta += diss * (static_cast<double>(now_diff) - static_cast<double>(was_diff));
  return delta;
}

// Steepest-descent polish by volume-preserving single swaps: repeatedly trade
// the best (add, remove) pair of boundary-adjacent cells while the step
// energy strictly decreases.  Deterministic: candidates scanned in cell
// order, strict improvement required.
void swap_polish(GridSet& f, const GridSet& previous, const DistanceField& d, double h,
                 const std::vector<CellState>& rim, int max_rounds = 256) {
  const auto& g = f.geometry();
  auto face_adjacent = [&](const GridSet& s, int64_t lin, bool wanted) {
    const Index3 idx = g.unlinear(lin);
    for (int k = 0; k < g.ndim; ++k) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        Index3 nb = idx;
        nb[k] += sgn;
        if (g.contains(nb) && s.at(nb) == wanted) return true;
      }
    }
    return false;
  };

  for (int round = 0; round < max_rounds; ++round) {
    std::vector<int64_t> adds, removes;
    for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
      if (rim[static_cast<size_t>(lin)] == CellState::forced_out) continue;
      if (!f.at(lin) && face_adjacent(f, lin, true)) adds.push_back(lin);
      if (f.at(lin) && face_adjacent(f, lin, false)) removes.push_back(lin);
    }
    double best = 0.0;
    int64_t best_add = -1, best_remove = -1;
    for (int64_t a : adds) {
      const double da = flip_delta(f, previous, d, h, a, true);
      f.set(a, true);
      for (int64_t b : removes) {
        if (b == a) continue;
        const double total = da + flip_delta(f, previous, d, h, b, false);
        if (total < best) {
          best = total;
          best_add = a;
          best_remove = b;
        }
      }
      f.set(a, false);
    }
    if (best_add < 0) break;
    f.set(best_add, true);
    f.set(best_remove, false);
  }
}

}  // namespace

StepResult find_lambda(const GridSet& previous, const DistanceField& d, const StepConfig& cfg) {
  const auto& g = previous.geometry();
  require_same_geometry(g, d.geometry());
  require(cfg.h > 0.0, ErrorCode::invalid_argument, "time step h must be positive");
  require(cfg.target_volume > 0.0, ErrorCode::invalid_argument, "target volume must be positive");
  require(cfg.volume_tolerance_cells >= 0, ErrorCode::invalid_argument,
          "volume tolerance must be nonnegative");

  const double cell_volume = g.cell_volume();
  const int64_t target = std::llround(cfg.target_volume / cell_volume);
  require(target >= 1, ErrorCode::invalid_argument, "target volume is below one cell");
  require(target < interior_count(g), ErrorCode::invalid_argument,
          "target volume does not fit in the grid interior");
  require(std::llabs(previous.count() - target) <= std::max<int64_t>(cfg.volume_tolerance_cells, 1),
          ErrorCode::precondition_failed,
          "previous set volume does not match the prescribed volume");

  const double previous_perimeter = perimeter(previous);
  int32_t iters = 0;

  auto finalize = [&](GridSet f, double lambda, int64_t adjustment) {
    StepResult r;
    r.perimeter = perimeter(f);
    r.dissipation = dissipation(f, previous, d);
    r.energy = r.perimeter + r.dissipation / cfg.h;
    r.volume = f.volume();
    r.lambda = lambda;
    r.bisection_iters = iters;
    r.adjustment_cells = adjustment;
    r.step_residual = r.energy - previous_perimeter;
    r.epsilon_adj = std::max(0.0, r.step_residual);
    r.next = std::move(f);
    return r;
  };

  double lo = cfg.lambda_lo;
  double hi = cfg.lambda_hi;
  const bool auto_bracket = std::isnan(lo) || std::isnan(hi);
  if (auto_bracket) {
    auto_lambda_bracket(d, cfg.h, lo, hi);
  }
  require(lo < hi, ErrorCode::invalid_argument, "lambda bracket is empty");

  BisectState bs;
  bs.state = rim_state(g);
  bs.free_count = interior_count(g);

  auto volume_of = [&](const GridSet& f) { return f.count(); };
  auto within_tolerance = [&](int64_t v) {
    return std::llabs(v - target) <= cfg.volume_tolerance_cells;
  };

  // Establish a straddling bracket, widening at most twice per side.
  GridSet f_lo = solve_cut(d, cfg.h, lo, bs.state);
  ++iters;
  int64_t v_lo = volume_of(f_lo);
  if (within_tolerance(v_lo)) return finalize(std::move(f_lo), lo, 0);
  for (int widen = 0; v_lo > target; ++widen) {
    require(widen < 2, ErrorCode::bracket_failure,
            "lambda bracket failure: volume exceeds target at the lower bracket end");
    lo -= 2.0 * (hi - lo);
    f_lo = solve_cut(d, cfg.h, lo, bs.state);
    ++iters;
    v_lo = volume_of(f_lo);
    if (within_tolerance(v_lo)) return finalize(std::move(f_lo), lo, 0);
  }
  GridSet f_hi = solve_cut(d, cfg.h, hi, bs.state);
  ++iters;
  int64_t v_hi = volume_of(f_hi);
  if (within_tolerance(v_hi)) return finalize(std::move(f_hi), hi, 0);
  for (int widen = 0; v_hi < target; ++widen) {
    require(widen < 2, ErrorCode::bracket_failure,
            "lambda bracket failure: volume stays below target at the upper bracket end");
    hi += 2.0 * (hi - lo);
    f_hi = solve_cut(d, cfg.h, hi, bs.state);
    ++iters;
    v_hi = volume_of(f_hi);
    if (within_tolerance(v_hi)) return finalize(std::move(f_hi), hi, 0);
  }

  // The cut family is nested in lambda, so cells inside the low cut stay in
  // and cells outside the high cut stay out; the working problem shrinks to
  // the jump region between them.
  force_in(bs, f_lo);
  force_out_complement(bs, f_hi);

  const double eps = 1e-13;
  while (iters < cfg.max_bisection_iters) {
    if (hi - lo <= eps * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
    const double mid = 0.5 * (lo + hi);
    GridSet f = solve_cut(d, cfg.h, mid, bs.state);
    ++iters;
    const int64_t v = volume_of(f);
    if (within_tolerance(v)) return finalize(std::move(f), mid, 0);
    if (v < target) {
      lo = mid;
      force_in(bs, f);
      f_lo = std::move(f);
      v_lo = v;
    } else {
      hi = mid;
      force_out_complement(bs, f);
      f_hi = std::move(f);
      v_hi = v;
    }
  }
  require(hi - lo <= eps * std::max({1.0, std::abs(lo), std::abs(hi)}),
          ErrorCode::iteration_limit,
          "bisection iteration limit reached with volume gap [" + std::to_string(v_lo) + ", " +
              std::to_string(v_hi) + "] around target " + std::to_string(target));

  // Bracket collapsed with the target volume inside a jump: pick the missing
  // cells from the jump region.  Small regions are solved exactly by
  // enumeration; large ones by the greedy marginal-cost completion from both
  // bracket endpoints.
  const double lambda_star = 0.5 * (lo + hi);
  std::vector<int64_t> gap;
  for (int64_t lin = 0; lin < g.cell_count(); ++lin) {
    if (bs.state[static_cast<size_t>(lin)] == CellState::free_cell) gap.push_back(lin);
  }
  const int64_t k = target - v_lo;
  const int64_t gap_size = static_cast<int64_t>(gap.size());

  GridSet best(g);
  double best_energy = std::numeric_limits<double>::infinity();
  int64_t best_adjustment = 0;
  auto consider = [&](const GridSet& f, int64_t adjustment) {
    const double e = step_energy(f, previous, d, cfg.h);
    if (e < best_energy) {
      best_energy = e;
      best = f;
      best_adjustment = adjustment;
    }
  };

  const double enumeration_cap = 2.0e5;
  if (binomial_capped(gap_size, k, enumeration_cap) <= enumeration_cap) {
    for_each_combination(gap_size, k, [&](const std::vector<int64_t>& pick) {
      GridSet f = f_lo;
      for (int64_t p : pick) f.set(gap[static_cast<size_t>(p)], true);
      consider(f, k);
    });
  } else {
    const auto marginal = [&](int64_t lin) { return std::abs(d.at(lin) / cfg.h - lambda_star); };
    auto pick_order = [&](const std::vector<int64_t>& pool) {
      std::vector<int64_t> order = pool;
      std::stable_sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
        const double ma = marginal(a), mb = marginal(b);
        if (ma != mb) return ma < mb;
        return a < b;
      });
      return order;
    };
    auto adjacent_to = [&](const GridSet& f, int64_t lin) {
      const Index3 idx = g.unlinear(lin);
      for (int kk = 0; kk < g.ndim; ++kk) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          Index3 nb = idx;
          nb[kk] += sgn;
          if (g.contains(nb) && f.at(nb)) return true;
        }
      }
      return false;
    };

    {  // grow from the low endpoint
      GridSet f = f_lo;
      std::vector<int64_t> pool = gap;
      for (int64_t step_i = 0; step_i < k; ++step_i) {
        const auto order = pick_order(pool);
        int64_t chosen = -1;
        for (int64_t lin : order) {
          if (adjacent_to(f, lin)) {
            chosen = lin;
            break;
          }
        }
        if (chosen < 0) chosen = order.front();
        f.set(chosen, true);
        pool.erase(std::find(pool.begin(), pool.end(), chosen));
      }
      consider(f, k);
    }
    {  // shrink from the high endpoint
      GridSet f = f_hi;
      std::vector<int64_t> pool;
      for (int64_t lin : gap) {
        if (f.at(lin)) pool.push_back(lin);
      }
      const int64_t drop = v_hi - target;
      GridSet complement(g);
      for (int64_t step_i = 0; step_i < drop; ++step_i) {
        for (int64_t lin = 0; lin < g.cell_count(); ++lin) complement.set(lin, !f.at(lin));
        const auto order = pick_order(pool);
        int64_t chosen = -1;
        for (int64_t lin : order) {
          if (adjacent_to(complement, lin)) {
            chosen = lin;
            break;
          }
        }
        if (chosen < 0) chosen = order.front();
        f.set(chosen, false);
        pool.erase(std::find(pool.begin(), pool.end(), chosen));
      }
      consider(f, drop);
    }
  }
  // The constrained optimum need not lie between the bracketing cuts; a
  // single-swap descent escapes the jump region when it pays.
  swap_polish(best, previous, d, cfg.h, rim_state(g));
  return finalize(std::move(best), lambda_star, best_adjustment);
}

StepResult step(const GridSet& previous, const StepConfig& cfg) {
  return find_lambda(previous, signed_distance(previous), cfg);
}

}  // namespace vpmcf
