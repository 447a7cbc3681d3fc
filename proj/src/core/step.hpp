#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "core/distance.hpp"
#include "core/grid_set.hpp"

namespace vpmcf {

struct StepConfig {
  double h = 1.0;               // time step, length^2 units
  double target_volume = 0.0;   // prescribed volume m, length^ndim
  // Initial multiplier bracket; NaN selects the automatic bracket that
  // provably straddles every attainable volume.
  double lambda_lo = std::numeric_limits<double>::quiet_NaN();
  double lambda_hi = std::numeric_limits<double>::quiet_NaN();
  int64_t volume_tolerance_cells = 0;
  int32_t max_bisection_iters = 120;
};

struct StepResult {
  GridSet next;
  double lambda = 0.0;
  double perimeter = 0.0;
  double dissipation = 0.0;
  double energy = 0.0;  // perimeter + dissipation / h, recomputed from next
  double volume = 0.0;
  int32_t bisection_iters = 0;
  int64_t adjustment_cells = 0;
  // Slack of the one-step energy inequality: max(0, energy - P(previous)).
  // Zero whenever the bisection lands on the exact target volume.
  double epsilon_adj = 0.0;
  double step_residual = 0.0;  // energy - P(previous), signed
};

double step_energy(const GridSet& next, const GridSet& reference, double h);
double step_energy(const GridSet& next, const GridSet& reference,
                   const DistanceField& reference_distance, double h);

// Global minimizer of the unconstrained cut energy
//   sum_pairs w * [cut] + sum_{cells in F} (d/h - lambda) * spacing^ndim
// over masks that keep the outer one-cell rim empty, computed as a minimum
// s-t cut.  Among multiple minimizers returns the inclusion-minimal one.
GridSet solve_at_lambda(const DistanceField& d, double h, double lambda);

// Volume-constrained step minimizer: bisection on lambda over the nested cut
// family, with an exact-volume adjustment when the target volume falls inside
// a jump of the volume staircase.
StepResult find_lambda(const GridSet& previous, const DistanceField& d, const StepConfig& cfg);

// signed_distance + find_lambda.
StepResult step(const GridSet& previous, const StepConfig& cfg);

// Automatic multiplier bracket guaranteeing empty / full-interior cuts.
void auto_lambda_bracket(const DistanceField& d, double h, double& lo, double& hi);

}  // namespace vpmcf
