#pragma once

#include <Eigen/Core>
#include <limits>
#include <optional>

#include "ras/config.hpp"
#include "ras/geometry.hpp"
#include "ras/objective.hpp"
#include "ras/rng.hpp"
#include "ras/trace.hpp"

namespace ras {

// Everything one search carries between iterations.  x is always the best
// point seen (moves happen only on improvement), so best_x/best_f mirror
// x/f_x at all times; both are kept so the invariant is checkable.
struct RunState {
  Eigen::VectorXd x;       // current point
  double f_x = 0.0;        // objective value at x
  SearchBox box;           // current search region
  int evaluations_used = 0;
  int iterations = 0;
  Eigen::VectorXd best_x;
  double best_f = 0.0;
  int consecutive_failures = 0;
  bool saw_nonfinite = false;  // some evaluation returned inf or nan
  // Raw value of the latest iteration's first trial (NaN before the first
  // step); feeds the trace's non-finite-evaluation flag.
  double f_first_shot = std::numeric_limits<double>::quiet_NaN();
};

struct RunResult {
  Eigen::VectorXd best_x;
  double best_f = 0.0;
  double initial_f = 0.0;  // value at the start point
  int evaluations_used = 0;
  int iterations = 0;
  TerminationStatus status = TerminationStatus::kBudgetExhausted;
  bool saw_nonfinite = false;
  RasConfig config;  // echo
  Trace trace;
};

// Projects x onto the domain box, coordinate by coordinate.
Eigen::VectorXd clamp_to_bounds(const Eigen::VectorXd& x,
                                const DomainBounds& bounds);

// Prepares a run: the start point is x0 if given (must lie in bounds),
// otherwise drawn uniformly from the domain using the first dim uniforms of
// rng; it is evaluated (one budget unit) and the initial box is built.
RunState init_run(const Objective& objective, const RasConfig& config,
                  Rng& rng,
                  const std::optional<Eigen::VectorXd>& x0 = std::nullopt);

// One iteration: draw delta; try x + delta; on improvement move there and
// dilate the box along delta; otherwise try x - delta (double-shot variants
// only, and only if budget remains); on improvement move and dilate; if no
// trial improved, contract.  Improvement means a finite value strictly
// below f_x; candidates are clamped to the domain before evaluation.
// Exactly one box update happens per call; evaluations_used grows by the
// number of objective calls (1 or 2).  Isotropic variants rescale the box
// uniformly instead of along delta.
StepOutcome ras_step(RunState& state, const Objective& objective,
                     const RasConfig& config, Rng& rng);

// Full optimization loop: initialize, then step until the evaluation budget
// is exhausted, the box collapses (every basis vector at the clamp floor,
// or the optional min_box_ratio_stop threshold is crossed), or the optional
// stagnation limit is hit.  Appends one trace record per iteration.
RunResult run(const Objective& objective, const RasConfig& config,
              const std::optional<Eigen::VectorXd>& x0 = std::nullopt);

}  // namespace ras
