#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ras/errors.hpp"
#include "ras/objective.hpp"
#include "ras/optimizer.hpp"
#include "ras/trace.hpp"

namespace ras {
namespace {

const char* kCsvHeader =
    "iteration,evaluations,best_f,outcome,box_min,box_max,box_ratio,"
    "angle_to_optimum";

// 17 significant digits: enough to reproduce any double exactly on parse.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no literal for non-finite numbers; those become null.
std::string json_number(double v) {
  return std::isfinite(v) ? fmt17(v) : "null";
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("trailing junk in number: " + s);
    return v;
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a number: '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("number out of range: '" + s + "'");
  }
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) throw ConfigError("not an integer: " + s);
  return i;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TraceRecord record_from_csv(const std::string& line) {
  const std::vector<std::string> f = split_csv(line);
  if (f.size() != 8) {
    throw ConfigError("trace row needs 8 fields, got " +
                      std::to_string(f.size()) + ": " + line);
  }
  TraceRecord rec;
  rec.iteration = parse_int(f[0]);
  rec.evaluations_used = parse_int(f[1]);
  rec.best_f = parse_double(f[2]);
  const auto outcome = step_outcome_from_string(f[3]);
  if (!outcome) throw ConfigError("unknown step outcome '" + f[3] + "'");
  rec.outcome = *outcome;
  rec.box_min = parse_double(f[4]);
  rec.box_max = parse_double(f[5]);
  rec.box_ratio = parse_double(f[6]);
  if (!f[7].empty()) rec.angle_to_optimum = parse_double(f[7]);
  return rec;
}

TraceRecord record_from_json(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("bad trace line: ") + e.what());
  }
  TraceRecord rec;
  try {
    rec.iteration = j.at("iteration").get<int>();
    rec.evaluations_used = j.at("evaluations").get<int>();
    rec.best_f = j.at("best_f").get<double>();
    const auto outcome =
        step_outcome_from_string(j.at("outcome").get<std::string>());
    if (!outcome) throw ConfigError("unknown step outcome in trace line");
    rec.outcome = *outcome;
    rec.box_min = j.at("box_min").get<double>();
    rec.box_max = j.at("box_max").get<double>();
    rec.box_ratio = j.at("box_ratio").get<double>();
    const auto& angle = j.at("angle_to_optimum");
    if (!angle.is_null()) rec.angle_to_optimum = angle.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad trace line: ") + e.what());
  }
  return rec;
}

}  // namespace

std::optional<TraceFormat> trace_format_from_string(const std::string& s) {
  if (s == "csv") return TraceFormat::kCsv;
  if (s == "jsonl") return TraceFormat::kJsonl;
  return std::nullopt;
}

TraceRecord record_iteration(const RunState& state, StepOutcome outcome,
                             const Objective& objective) {
  TraceRecord rec;
  rec.iteration = state.iterations;
  rec.evaluations_used = state.evaluations_used;
  rec.best_f = state.best_f;
  rec.f_first_shot = state.f_first_shot;
  rec.outcome = outcome;
  const BoxMetrics m = box_metrics(state.box);
  rec.box_min = m.min_len;
  rec.box_max = m.max_len;
  rec.box_ratio = m.ratio;
  if (objective.optimum()) {
    const Eigen::VectorXd to_opt = objective.optimum()->point - state.x;
    if (to_opt.norm() > 0.0) {
      rec.angle_to_optimum = angle_between(m.dominant, to_opt);
    }
  }
  return rec;
}

void export_trace(const Trace& trace, std::ostream& out, TraceFormat format) {
  if (format == TraceFormat::kCsv) {
    out << kCsvHeader << '\n';
    for (const TraceRecord& r : trace.records) {
      out << r.iteration << ',' << r.evaluations_used << ','
          << fmt17(r.best_f) << ',' << to_string(r.outcome) << ','
          << fmt17(r.box_min) << ',' << fmt17(r.box_max) << ','
          << fmt17(r.box_ratio) << ',';
      if (r.angle_to_optimum) out << fmt17(*r.angle_to_optimum);
      out << '\n';
    }
  } else {
    for (const TraceRecord& r : trace.records) {
      out << "{\"iteration\":" << r.iteration
          << ",\"evaluations\":" << r.evaluations_used
          << ",\"best_f\":" << json_number(r.best_f) << ",\"outcome\":\""
          << to_string(r.outcome) << "\",\"box_min\":" << json_number(r.box_min)
          << ",\"box_max\":" << json_number(r.box_max)
          << ",\"box_ratio\":" << json_number(r.box_ratio)
          << ",\"angle_to_optimum\":"
          << (r.angle_to_optimum ? json_number(*r.angle_to_optimum) : "null")
          << "}\n";
    }
  }
}

Trace import_trace(std::istream& in) {
  Trace trace;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '{') {
      trace.records.push_back(record_from_json(line));
      continue;
    }
    if (!header_seen && line == kCsvHeader) {
      header_seen = true;
      continue;
    }
    if (!header_seen) {
      throw ConfigError("trace input does not start with the trace header");
    }
    trace.records.push_back(record_from_csv(line));
  }
  return trace;
}

double best_at_evaluations(const Trace& trace, int evaluations) {
  // last record whose evaluation count does not exceed the query
  const auto it = std::upper_bound(
      trace.records.begin(), trace.records.end(), evaluations,
      [](int e, const TraceRecord& r) { return e < r.evaluations_used; });
  if (it == trace.records.begin()) return trace.initial_f;
  return std::prev(it)->best_f;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw ConfigError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("quantile level outside [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

MultiRunSummary summarize_runs(const std::vector<Trace>& traces,
                               const std::vector<int>& eval_grid) {
  if (traces.empty()) throw ConfigError("summary needs at least one trace");
  for (std::size_t i = 1; i < eval_grid.size(); ++i) {
    if (eval_grid[i] <= eval_grid[i - 1]) {
      throw ConfigError("evaluation grid must be strictly increasing");
    }
  }
  MultiRunSummary summary;
  summary.n_runs = static_cast<int>(traces.size());
  summary.points.reserve(eval_grid.size());
  std::vector<double> vals(traces.size());
  for (int evals : eval_grid) {
    for (std::size_t i = 0; i < traces.size(); ++i) {
      vals[i] = best_at_evaluations(traces[i], evals);
    }
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    SummaryPoint pt;
    pt.evaluations = evals;
    pt.q1 = quantile_sorted(sorted, 0.25);
    pt.median = quantile_sorted(sorted, 0.5);
    pt.q3 = quantile_sorted(sorted, 0.75);
    pt.min = sorted.front();
    pt.max = sorted.back();
    double sum = 0.0;
    for (double v : sorted) sum += v;
    pt.mean = sum / static_cast<double>(sorted.size());
    summary.points.push_back(pt);
  }
  return summary;
}

}  // namespace ras
