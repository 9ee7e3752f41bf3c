#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ras/config.hpp"

namespace ras {

struct RunState;  // defined in optimizer.hpp
class Objective;  // defined in objective.hpp

// One row of a run trace, captured after every iteration.
struct TraceRecord {
  int iteration = 0;         // 1-based iteration count
  int evaluations_used = 0;  // objective evaluations consumed so far
  double best_f = 0.0;       // incumbent value after the iteration
  // Raw value of the iteration's first trial; inf/nan marks an evaluation
  // that came back non-finite.  Kept in memory only, not exported.
  double f_first_shot = std::numeric_limits<double>::quiet_NaN();
  StepOutcome outcome = StepOutcome::kDoubleFailure;
  double box_min = 0.0;      // shortest basis vector length
  double box_max = 0.0;      // longest basis vector length
  double box_ratio = 0.0;    // box_min / box_max, in (0, 1]
  // Angle (radians, in [0, pi/2]) between the dominant basis vector and the
  // line toward the known optimum; absent when the objective has no recorded
  // optimum or the current point sits exactly on it.
  std::optional<double> angle_to_optimum;
};

struct Trace {
  std::vector<TraceRecord> records;
  RasConfig config;  // echo of the generating run (carries the seed)
  // Objective value at the start point, before any iteration; lets summaries
  // answer queries that predate the first record.
  double initial_f = std::numeric_limits<double>::quiet_NaN();

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

enum class TraceFormat { kCsv, kJsonl };

std::optional<TraceFormat> trace_format_from_string(const std::string& s);

// Snapshot of the live optimizer state after an iteration with the given
// outcome.  The angle field compares the dominant box vector against
// optimum.point - x when the objective declares an optimum.
TraceRecord record_iteration(const RunState& state, StepOutcome outcome,
                             const Objective& objective);

// Writes the trace to a stream.  CSV has the fixed header
//   iteration,evaluations,best_f,outcome,box_min,box_max,box_ratio,angle_to_optimum
// and one data row per record; JSONL carries one object per line with the
// same field names.  Floats are printed with 17 significant digits so
// parsing them back reproduces the exact doubles; an absent angle is an
// empty CSV field / JSON null.
void export_trace(const Trace& trace, std::ostream& out, TraceFormat format);

// Parses text produced by export_trace (either format, auto-detected).
// Lines starting with '#' are skipped.  Only exported fields are recovered;
// config and initial_f are left at defaults.  Throws ConfigError on
// malformed input.
Trace import_trace(std::istream& in);

// Best value a run had after at most `evaluations` objective calls: a step
// function over the records, equal to initial_f before the first one.
double best_at_evaluations(const Trace& trace, int evaluations);

// Quartile band of best values across runs at one budget grid point.
struct SummaryPoint {
  int evaluations = 0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct MultiRunSummary {
  std::vector<SummaryPoint> points;  // one per eval_grid entry, same order
  int n_runs = 0;
};

// Aggregates runs on the given grid of evaluation counts (must be
// increasing).  Quantiles use the linear-interpolation convention (R type 7).
MultiRunSummary summarize_runs(const std::vector<Trace>& traces,
                               const std::vector<int>& eval_grid);

// p-th quantile (p in [0, 1]) of values sorted ascending, with linear
// interpolation between order statistics (R type 7).  Requires non-empty
// input.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace ras
