#include "ras/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ras/errors.hpp"
#include "ras/rng.hpp"

namespace ras {
namespace {

constexpr double kRadToDeg = 57.29577951308232;  // 180 / pi

// Runs task(0..n_tasks-1), either inline or on a small worker pool.  Tasks
// must write to disjoint slots; the first exception (by task index) is
// rethrown after all workers finish.
void parallel_for(int n_tasks, int workers,
                  const std::function<void(int)>& task) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_tasks));
  if (workers < 2 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    const int n_threads = std::min(workers, n_tasks);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (int i; (i = next.fetch_add(1)) < n_tasks;) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void fill_cell_stats(AblationCell& cell) {
  if (cell.finals.empty()) return;
  std::vector<double> sorted = cell.finals;
  std::sort(sorted.begin(), sorted.end());
  cell.q1 = quantile_sorted(sorted, 0.25);
  cell.median = quantile_sorted(sorted, 0.5);
  cell.q3 = quantile_sorted(sorted, 0.75);
  cell.min = sorted.front();
  cell.max = sorted.back();
  double sum = 0.0;
  for (double v : sorted) sum += v;
  cell.mean = sum / static_cast<double>(sorted.size());
}

}  // namespace

AngleTableRow avg_random_angle(int dim, long long n_samples,
                               std::uint64_t seed) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (n_samples < 1) throw ConfigError("need at least one sample");
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long long s = 0; s < n_samples; ++s) {
    // two independent Gaussian vectors, accumulated without materializing
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double ui = rng.normal();
      const double vi = rng.normal();
      dot += ui * vi;
      nu += ui * ui;
      nv += vi * vi;
    }
    double c = std::abs(dot) / std::sqrt(nu * nv);
    if (c > 1.0) c = 1.0;
    const double angle = std::acos(c) * kRadToDeg;
    sum += angle;
    sum_sq += angle * angle;
  }
  AngleTableRow row;
  row.dim = dim;
  row.n_samples = n_samples;
  const double n = static_cast<double>(n_samples);
  row.avg_angle_deg = sum / n;
  if (n_samples > 1) {
    const double var =
        std::max(0.0, (sum_sq - n * row.avg_angle_deg * row.avg_angle_deg) /
                          (n - 1.0));
    row.std_error_deg = std::sqrt(var / n);
  }
  return row;
}

SuccessProbRow double_shot_success(int dim, double radius_ratio,
                                   long long n_samples, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (!(radius_ratio > 0.0)) throw ConfigError("radius ratio must be positive");
  if (n_samples < 1) throw ConfigError("need at least one sample");
  Rng rng(seed);
  long long hits = 0;
  for (long long s = 0; s < n_samples; ++s) {
    // delta = radius * g/||g||; success iff ||delta||^2 < 2|delta_1|, i.e.
    // 0 < radius < 2|g_1|/||g||
    double g1 = 0.0, norm_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double g = rng.normal();
      if (i == 0) g1 = g;
      norm_sq += g * g;
    }
    const double radius =
        radius_ratio * std::pow(rng.uniform01(), 1.0 / dim);
    if (norm_sq > 0.0 && radius > 0.0 &&
        radius * std::sqrt(norm_sq) < 2.0 * std::abs(g1)) {
      ++hits;
    }
  }
  SuccessProbRow row;
  row.dim = dim;
  row.radius_ratio = radius_ratio;
  row.n_samples = n_samples;
  row.probability =
      static_cast<double>(hits) / static_cast<double>(n_samples);
  return row;
}

const std::vector<int>& table_dims() {
  static const std::vector<int> dims{1, 2, 3, 5, 10, 50, 100, 500, 1000};
  return dims;
}

const std::vector<double>& table_ratios() {
  static const std::vector<double> ratios{1.0,  0.5,   0.1, 0.05,
                                          0.01, 0.005, 0.001};
  return ratios;
}

std::vector<AngleTableRow> angle_table(const std::vector<int>& dims,
                                       long long n_samples,
                                       std::uint64_t base_seed, int parallel) {
  std::vector<AngleTableRow> rows(dims.size());
  parallel_for(static_cast<int>(dims.size()), parallel, [&](int i) {
    rows[static_cast<std::size_t>(i)] = avg_random_angle(
        dims[static_cast<std::size_t>(i)], n_samples,
        derive_seed(base_seed, static_cast<std::uint64_t>(i)));
  });
  return rows;
}

std::vector<SuccessProbRow> success_table(const std::vector<int>& dims,
                                          const std::vector<double>& ratios,
                                          long long n_samples,
                                          std::uint64_t base_seed,
                                          int parallel) {
  // row-major: one slot per (ratio, dim) pair
  std::vector<SuccessProbRow> cells(ratios.size() * dims.size());
  parallel_for(static_cast<int>(cells.size()), parallel, [&](int t) {
    const std::size_t r = static_cast<std::size_t>(t) / dims.size();
    const std::size_t c = static_cast<std::size_t>(t) % dims.size();
    cells[static_cast<std::size_t>(t)] = double_shot_success(
        dims[c], ratios[r], n_samples,
        derive_seed(base_seed, static_cast<std::uint64_t>(t)));
  });
  return cells;
}

std::vector<int> default_eval_grid(int max_evaluations) {
  if (max_evaluations < 1) throw ConfigError("budget must be positive");
  std::vector<int> grid{1};
  const int step = std::max(1, max_evaluations / 100);
  for (int e = step; e < max_evaluations; e += step) {
    if (e > grid.back()) grid.push_back(e);
  }
  if (max_evaluations > grid.back()) grid.push_back(max_evaluations);
  return grid;
}

CampaignResult run_campaign(const Objective& objective, const RasConfig& base,
                            int n_runs, const std::vector<int>& eval_grid,
                            int parallel) {
  if (n_runs < 1) throw ConfigError("a campaign needs at least one run");
  base.validate();
  CampaignResult out;
  out.eval_grid =
      eval_grid.empty() ? default_eval_grid(base.max_evaluations) : eval_grid;
  out.runs.resize(static_cast<std::size_t>(n_runs));
  std::vector<std::string> failures(static_cast<std::size_t>(n_runs));
  parallel_for(n_runs, parallel, [&](int i) {
    RasConfig config = base;
    config.seed = base.seed + static_cast<std::uint64_t>(i);
    try {
      out.runs[static_cast<std::size_t>(i)] = run(objective, config);
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(i)] =
          e.what()[0] ? e.what() : "unknown error";
    }
  });
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) {
      throw std::runtime_error("campaign run " + std::to_string(i) +
                               " failed: " + failures[i]);
    }
  }
  std::vector<Trace> traces;
  traces.reserve(out.runs.size());
  for (const RunResult& r : out.runs) traces.push_back(r.trace);
  out.summary = summarize_runs(traces, out.eval_grid);
  return out;
}

std::vector<int> filter_runs_by_final(const std::vector<RunResult>& runs,
                                      double threshold) {
  std::vector<int> kept;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].best_f <= threshold) kept.push_back(static_cast<int>(i));
  }
  return kept;
}

std::vector<AblationCell> run_ablation_grid(
    const Objective& objective, const std::vector<double>& etas,
    const std::vector<double>& rho_cons, const std::vector<Variant>& variants,
    const std::vector<std::uint64_t>& seeds, int budget, int parallel) {
  if (etas.empty() || rho_cons.empty() || variants.empty() || seeds.empty()) {
    throw ConfigError("ablation grid needs non-empty parameter lists");
  }
  if (budget < 2) throw ConfigError("budget must be at least 2");

  std::vector<AblationCell> cells;
  cells.reserve(etas.size() * rho_cons.size() * variants.size());
  for (double eta : etas) {
    for (double rho_con : rho_cons) {
      for (Variant variant : variants) {
        AblationCell cell;
        cell.eta = eta;
        cell.rho_con = rho_con;
        cell.variant = variant;
        cells.push_back(std::move(cell));
      }
    }
  }

  const int n_seeds = static_cast<int>(seeds.size());
  const int n_tasks = static_cast<int>(cells.size()) * n_seeds;
  // finals laid out per (cell, seed); NaN marks a failed run
  std::vector<double> finals(static_cast<std::size_t>(n_tasks),
                             std::numeric_limits<double>::quiet_NaN());
  parallel_for(n_tasks, parallel, [&](int t) {
    const std::size_t cell_idx = static_cast<std::size_t>(t / n_seeds);
    const int seed_idx = t % n_seeds;
    const AblationCell& cell = cells[cell_idx];
    RasConfig config;
    config.eta = cell.eta;
    config.rho_con = cell.rho_con;
    config.rho_dil = 1.0 / cell.rho_con;  // dilation mirrors contraction
    config.variant = cell.variant;
    config.max_evaluations = budget;
    config.seed = seeds[static_cast<std::size_t>(seed_idx)];
    try {
      finals[static_cast<std::size_t>(t)] = run(objective, config).best_f;
    } catch (const DegenerateSampleError&) {
      // recorded as a failed run below; the rest of the grid proceeds
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int s = 0; s < n_seeds; ++s) {
      const double v = finals[c * static_cast<std::size_t>(n_seeds) +
                              static_cast<std::size_t>(s)];
      if (std::isnan(v)) {
        ++cells[c].failed_runs;
      } else {
        cells[c].finals.push_back(v);
      }
    }
    fill_cell_stats(cells[c]);
  }
  return cells;
}

const std::vector<double>& default_ablation_etas() {
  static const std::vector<double> v{0.05, 0.1, 0.2, 0.4};
  return v;
}

const std::vector<double>& default_ablation_rho_cons() {
  static const std::vector<double> v{0.1, 0.2, 0.5};
  return v;
}

}  // namespace ras
