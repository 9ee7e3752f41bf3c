#pragma once

#include <cstdint>
#include <vector>

#include "ras/config.hpp"
#include "ras/objective.hpp"
#include "ras/optimizer.hpp"
#include "ras/trace.hpp"

namespace ras {

// Mean angle between independent random directions in dimension `dim`.
struct AngleTableRow {
  int dim = 0;
  double avg_angle_deg = 0.0;   // in [0, 90]
  double std_error_deg = 0.0;   // Monte-Carlo standard error of the mean
  long long n_samples = 0;
};

// Directions are sampled as normalized standard-normal vectors; the angle
// between two of them is folded into [0°, 90°] via the absolute cosine
// (lines, not arrows).  d=1 gives exactly 0.
AngleTableRow avg_random_angle(int dim, long long n_samples,
                               std::uint64_t seed);

// Probability that a mirrored trial pair lands inside the improvement
// region, as a function of dimension and search-radius ratio.
struct SuccessProbRow {
  int dim = 0;
  double radius_ratio = 0.0;  // search radius / improvement-sphere radius
  double probability = 0.0;   // in [0, 1]
  long long n_samples = 0;
};

// Monte-Carlo model: the current point sits on the surface of a unit sphere
// of improving values centered at c = (1, 0, ..., 0); delta is drawn
// uniformly inside the ball of radius radius_ratio around the origin
// (normalized Gaussian direction scaled by U^(1/d)); the pair succeeds if
// ||delta - c|| < 1 or ||-delta - c|| < 1.
SuccessProbRow double_shot_success(int dim, double radius_ratio,
                                   long long n_samples, std::uint64_t seed);

// Dimension and ratio grids of the reference table.
const std::vector<int>& table_dims();
const std::vector<double>& table_ratios();

// Convenience drivers for whole tables.  Row/cell seeds are derived from
// base_seed and the cell index, so results are independent of evaluation
// order and of `parallel` (worker count; values < 2 mean sequential).
std::vector<AngleTableRow> angle_table(const std::vector<int>& dims,
                                       long long n_samples,
                                       std::uint64_t base_seed,
                                       int parallel = 1);
std::vector<SuccessProbRow> success_table(const std::vector<int>& dims,
                                          const std::vector<double>& ratios,
                                          long long n_samples,
                                          std::uint64_t base_seed,
                                          int parallel = 1);

// Multi-seed campaign on one objective: n_runs independent optimizations
// with seeds base.seed + 0 .. base.seed + n_runs - 1, summarized on
// `eval_grid` (default grid when empty).
struct CampaignResult {
  std::vector<RunResult> runs;  // index i ran with seed base.seed + i
  std::vector<int> eval_grid;
  MultiRunSummary summary;
};

CampaignResult run_campaign(const Objective& objective, const RasConfig& base,
                            int n_runs, const std::vector<int>& eval_grid = {},
                            int parallel = 1);

// Grid of budgets traces are compared on: 1, then ~100 evenly spaced points
// up to and including max_evaluations.
std::vector<int> default_eval_grid(int max_evaluations);

// Indices of runs whose final best value is at or below `threshold`.  Used
// to restrict summaries to runs that reached a particular attraction basin.
std::vector<int> filter_runs_by_final(const std::vector<RunResult>& runs,
                                      double threshold);

// One cell of the parameter-sweep grid: quartiles of the final best value
// across seeds for a given (eta, rho_con, variant).
struct AblationCell {
  double eta = 0.0;
  double rho_con = 0.0;  // dilation is fixed at 1 / rho_con
  Variant variant = Variant::kFull;
  std::vector<double> finals;  // final best_f, one per completed run
  int failed_runs = 0;         // runs that raised; recorded, not fatal
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// Runs every (eta, rho_con, variant) combination once per seed with the
// given evaluation budget.  All cells share the seed list, which pairs the
// comparisons across variants.
std::vector<AblationCell> run_ablation_grid(
    const Objective& objective, const std::vector<double>& etas,
    const std::vector<double>& rho_cons, const std::vector<Variant>& variants,
    const std::vector<std::uint64_t>& seeds, int budget, int parallel = 1);

// Parameter brackets swept when the caller does not name any.
const std::vector<double>& default_ablation_etas();     // {0.05,0.1,0.2,0.4}
const std::vector<double>& default_ablation_rho_cons(); // {0.1,0.2,0.5}

}  // namespace ras
