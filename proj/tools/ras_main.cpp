// Command-line front end: single runs, multi-seed campaigns, parameter
// ablations, and the Monte-Carlo geometry tables.  All machine-readable
// output goes to files under --out; stdout carries a one-line summary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ras/benchmarks.hpp"
#include "ras/errors.hpp"
#include "ras/experiments.hpp"
#include "ras/optimizer.hpp"
#include "ras/trace.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest decimal form that parses back to the same double; keeps the
// replay comments readable ("0.2" instead of "0.20000000000000001").
std::string fmt_shortest(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

struct FunctionSpec {
  std::string name;  // as given on the command line
  int dim = 0;       // 0 means "not specified"

  std::string flags() const {
    std::string s = "--function " + name;
    if (dim > 0) s += " --dim " + std::to_string(dim);
    return s;
  }
};

ras::Objective resolve_objective(const FunctionSpec& spec) {
  const std::string& name = spec.name;
  if (name == "rosenbrock" || name == "paraboloid") {
    if (spec.dim <= 0) {
      throw ras::ConfigError("--function " + name + " needs --dim");
    }
    return name == "rosenbrock" ? ras::make_rosenbrock(spec.dim)
                                : ras::make_paraboloid(spec.dim);
  }
  if (name == "branin" && (spec.dim == 0 || spec.dim == 2)) {
    return ras::make_branin();
  }
  if (name == "hartmann6" && (spec.dim == 0 || spec.dim == 6)) {
    return ras::make_hartmann6();
  }
  ras::Objective obj = ras::make_benchmark(name);
  if (spec.dim > 0 && spec.dim != obj.dim()) {
    throw ras::ConfigError("'" + name + "' is " + std::to_string(obj.dim()) +
                           "-dimensional; --dim " + std::to_string(spec.dim) +
                           " does not apply");
  }
  return obj;
}

ras::Variant parse_variant(const std::string& s) {
  const auto v = ras::variant_from_string(s);
  if (!v) throw ras::ConfigError("unknown variant '" + s + "'");
  return *v;
}

ras::TraceFormat parse_format(const std::string& s) {
  const auto f = ras::trace_format_from_string(s);
  if (!f) throw ras::ConfigError("unknown trace format '" + s + "'");
  return *f;
}

// The replay comment written at the top of each trace file: the exact
// single-run command that reproduces it, independent of --out/--parallel.
std::string run_invocation(const FunctionSpec& spec, const ras::RasConfig& cfg,
                           const std::string& format) {
  std::ostringstream s;
  s << "ras run " << spec.flags() << " --budget " << cfg.max_evaluations
    << " --seed " << cfg.seed << " --eta " << fmt_shortest(cfg.eta)
    << " --rho-dil " << fmt_shortest(cfg.rho_dil) << " --rho-con "
    << fmt_shortest(cfg.rho_con) << " --variant " << ras::to_string(cfg.variant)
    << " --format " << format;
  return s.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write to " + path.string());
  }
  return out;
}

void write_trace_file(const fs::path& path, const std::string& invocation,
                      const ras::Trace& trace, ras::TraceFormat format) {
  std::ofstream out = open_out(path);
  out << "# " << invocation << "\n";
  ras::export_trace(trace, out, format);
}

ordered_json config_json(const ras::RasConfig& cfg) {
  ordered_json j;
  j["eta"] = cfg.eta;
  j["rho_dil"] = cfg.rho_dil;
  j["rho_con"] = cfg.rho_con;
  j["max_evaluations"] = cfg.max_evaluations;
  j["variant"] = ras::to_string(cfg.variant);
  j["seed"] = cfg.seed;
  return j;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// --- config file merging ----------------------------------------------------
//
// A config file is flat `key=value` lines ('#' comments allowed) whose keys
// are the long flag names without dashes.  Values fill in only the flags the
// command line left untouched, so explicit flags always win.

using ConfigSetters =
    std::map<std::string, std::function<void(const std::string&)>>;

long long config_int(const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ras::ConfigError("config value '" + v + "' is not an integer");
  }
}

double config_double(const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ras::ConfigError("config value '" + v + "' is not a number");
  }
}

std::vector<std::string> config_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::string config_trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

void apply_config_file(const CLI::App* sub, const std::string& path,
                       const ConfigSetters& setters) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ras::ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = config_trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ras::ConfigError("config line " + std::to_string(lineno) +
                             " is not key=value: " + stripped);
    }
    const std::string key = config_trim(stripped.substr(0, eq));
    const std::string value = config_trim(stripped.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ras::ConfigError("unknown config key '" + key + "' on line " +
                             std::to_string(lineno));
    }
    if (sub->count("--" + key) > 0) continue;  // the flag was explicit
    it->second(value);
  }
}

// --- subcommand state ------------------------------------------------------

struct CommonArgs {
  FunctionSpec spec;
  int budget = 10000;
  std::uint64_t seed = 0;
  double eta = 0.2;
  double rho_dil = 5.0;
  double rho_con = 0.2;
  std::string variant = "full";
  std::string format = "csv";
  std::string out_dir = "./out";
  std::string config_path;
  int parallel = 1;

  ras::RasConfig to_config() const {
    ras::RasConfig cfg;
    cfg.eta = eta;
    cfg.rho_dil = rho_dil;
    cfg.rho_con = rho_con;
    cfg.max_evaluations = budget;
    cfg.seed = seed;
    cfg.variant = parse_variant(variant);
    return cfg;
  }
};

void add_common_options(CLI::App* sub, CommonArgs* args) {
  sub->add_option("--function", args->spec.name,
                  "objective name (see README for the list)");
  sub->add_option("--dim", args->spec.dim,
                  "dimension for the parametric families");
  sub->add_option("--budget", args->budget, "evaluation budget per run");
  sub->add_option("--seed", args->seed, "base random seed");
  sub->add_option("--eta", args->eta, "initial box size as a domain fraction");
  sub->add_option("--rho-dil", args->rho_dil, "dilation factor on success");
  sub->add_option("--rho-con", args->rho_con, "contraction factor on failure");
  sub->add_option("--variant", args->variant, "algorithm variant")
      ->check(CLI::IsMember(
          {"full", "isotropic", "single-shot", "isotropic-single-shot"}));
  sub->add_option("--format", args->format, "trace file format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--out", args->out_dir, "output directory");
  sub->add_option("--config", args->config_path,
                  "flat key=value file with defaults for these flags");
}

ConfigSetters common_setters(CommonArgs* args) {
  ConfigSetters s;
  s["function"] = [args](const std::string& v) { args->spec.name = v; };
  s["dim"] = [args](const std::string& v) {
    args->spec.dim = static_cast<int>(config_int(v));
  };
  s["budget"] = [args](const std::string& v) {
    args->budget = static_cast<int>(config_int(v));
  };
  s["seed"] = [args](const std::string& v) {
    args->seed = static_cast<std::uint64_t>(config_int(v));
  };
  s["eta"] = [args](const std::string& v) { args->eta = config_double(v); };
  s["rho-dil"] = [args](const std::string& v) {
    args->rho_dil = config_double(v);
  };
  s["rho-con"] = [args](const std::string& v) {
    args->rho_con = config_double(v);
  };
  s["variant"] = [args](const std::string& v) { args->variant = v; };
  s["format"] = [args](const std::string& v) { args->format = v; };
  s["out"] = [args](const std::string& v) { args->out_dir = v; };
  return s;
}

void require_function(const CommonArgs& args) {
  if (args.spec.name.empty()) {
    throw ras::ConfigError("--function is required (flag or config file)");
  }
  if (args.variant != "full" && args.variant != "isotropic" &&
      args.variant != "single-shot" && args.variant != "isotropic-single-shot") {
    throw ras::ConfigError("unknown variant '" + args.variant + "'");
  }
  if (args.format != "csv" && args.format != "jsonl") {
    throw ras::ConfigError("unknown trace format '" + args.format + "'");
  }
}

int cmd_run(const CommonArgs& args) {
  const ras::Objective objective = resolve_objective(args.spec);
  const ras::RasConfig cfg = args.to_config();
  const ras::TraceFormat format = parse_format(args.format);
  const std::string invocation = run_invocation(args.spec, cfg, args.format);

  const ras::RunResult result = ras::run(objective, cfg);

  fs::create_directories(args.out_dir);
  const fs::path trace_path =
      fs::path(args.out_dir) /
      (format == ras::TraceFormat::kCsv ? "trace.csv" : "trace.jsonl");
  write_trace_file(trace_path, invocation, result.trace, format);

  ordered_json j;
  j["invocation"] = invocation;
  j["function"] = objective.name();
  j["seed"] = cfg.seed;
  j["best_f"] = result.best_f;
  j["best_x"] = vector_json(result.best_x);
  j["initial_f"] = result.initial_f;
  j["evaluations_used"] = result.evaluations_used;
  j["iterations"] = result.iterations;
  j["status"] = ras::to_string(result.status);
  j["saw_nonfinite"] = result.saw_nonfinite;
  j["config"] = config_json(cfg);
  j["trace_file"] = trace_path.filename().string();
  open_out(fs::path(args.out_dir) / "result.json") << j.dump(2) << "\n";

  std::cout << objective.name() << ": best_f=" << fmt_shortest(result.best_f)
            << " after " << result.evaluations_used << " evaluations ("
            << ras::to_string(result.status) << "), trace -> "
            << trace_path.string() << "\n";
  return 0;
}

void write_summary_csv(const fs::path& path, const std::string& invocation,
                       const ras::MultiRunSummary& summary) {
  std::ofstream out = open_out(path);
  out << "# " << invocation << "\n";
  out << "evaluations,q1,median,q3,min,max,mean,n_runs\n";
  for (const ras::SummaryPoint& p : summary.points) {
    out << p.evaluations << ',' << fmt17(p.q1) << ',' << fmt17(p.median) << ','
        << fmt17(p.q3) << ',' << fmt17(p.min) << ',' << fmt17(p.max) << ','
        << fmt17(p.mean) << ',' << summary.n_runs << '\n';
  }
}

int cmd_campaign(const CommonArgs& args, int n_runs,
                 std::optional<double> filter_threshold) {
  const ras::Objective objective = resolve_objective(args.spec);
  const ras::RasConfig base = args.to_config();
  const ras::TraceFormat format = parse_format(args.format);
  std::ostringstream inv;
  inv << "ras campaign " << args.spec.flags() << " --runs " << n_runs
      << " --budget " << base.max_evaluations << " --seed " << base.seed
      << " --eta " << fmt_shortest(base.eta) << " --rho-dil "
      << fmt_shortest(base.rho_dil) << " --rho-con "
      << fmt_shortest(base.rho_con) << " --variant "
      << ras::to_string(base.variant) << " --format " << args.format;
  if (filter_threshold) {
    inv << " --filter-threshold " << fmt_shortest(*filter_threshold);
  }
  const std::string invocation = inv.str();

  const ras::CampaignResult res =
      ras::run_campaign(objective, base, n_runs, {}, args.parallel);

  fs::create_directories(args.out_dir);
  const char* ext = format == ras::TraceFormat::kCsv ? "csv" : "jsonl";
  ordered_json runs_json = ordered_json::array();
  for (int i = 0; i < n_runs; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "trace_%03d.%s", i, ext);
    const ras::RunResult& r = res.runs[static_cast<std::size_t>(i)];
    // each trace is stamped with the single-run command that replays it
    ras::RasConfig solo = base;
    solo.seed = base.seed + static_cast<std::uint64_t>(i);
    write_trace_file(fs::path(args.out_dir) / name,
                     run_invocation(args.spec, solo, args.format), r.trace,
                     format);
    ordered_json rj;
    rj["seed"] = solo.seed;
    rj["best_f"] = r.best_f;
    rj["initial_f"] = r.initial_f;
    rj["evaluations_used"] = r.evaluations_used;
    rj["status"] = ras::to_string(r.status);
    rj["trace_file"] = name;
    runs_json.push_back(std::move(rj));
  }
  write_summary_csv(fs::path(args.out_dir) / "summary.csv", invocation,
                    res.summary);

  ordered_json j;
  j["invocation"] = invocation;
  j["function"] = objective.name();
  j["n_runs"] = n_runs;
  j["base_seed"] = base.seed;
  j["config"] = config_json(base);
  j["runs"] = std::move(runs_json);
  j["summary_file"] = "summary.csv";

  std::vector<double> finals;
  finals.reserve(res.runs.size());
  for (const ras::RunResult& r : res.runs) finals.push_back(r.best_f);
  std::sort(finals.begin(), finals.end());
  const double median_final = ras::quantile_sorted(finals, 0.5);
  j["median_final_best_f"] = median_final;

  if (filter_threshold) {
    const std::vector<int> kept =
        ras::filter_runs_by_final(res.runs, *filter_threshold);
    ordered_json fj;
    fj["threshold"] = *filter_threshold;
    fj["kept_runs"] = kept;
    fj["n_kept"] = static_cast<int>(kept.size());
    if (!kept.empty()) {
      std::vector<ras::Trace> traces;
      traces.reserve(kept.size());
      for (int idx : kept) {
        traces.push_back(res.runs[static_cast<std::size_t>(idx)].trace);
      }
      write_summary_csv(fs::path(args.out_dir) / "summary_filtered.csv",
                        invocation,
                        ras::summarize_runs(traces, res.eval_grid));
      fj["summary_file"] = "summary_filtered.csv";
    }
    j["filter"] = std::move(fj);
  }
  open_out(fs::path(args.out_dir) / "campaign.json") << j.dump(2) << "\n";

  std::cout << objective.name() << ": " << n_runs << " runs x " << args.budget
            << " evaluations, median final best_f="
            << fmt_shortest(median_final) << ", outputs -> " << args.out_dir
            << "\n";
  return 0;
}

int cmd_ablation(const CommonArgs& args, int n_runs,
                 const std::vector<double>& etas,
                 const std::vector<double>& rho_cons,
                 const std::vector<std::string>& variant_names) {
  const ras::Objective objective = resolve_objective(args.spec);
  std::vector<ras::Variant> variants;
  variants.reserve(variant_names.size());
  for (const std::string& v : variant_names) variants.push_back(parse_variant(v));
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n_runs));
  for (int i = 0; i < n_runs; ++i) {
    seeds[static_cast<std::size_t>(i)] = args.seed + static_cast<std::uint64_t>(i);
  }

  std::ostringstream inv;
  inv << "ras ablation " << args.spec.flags() << " --runs " << n_runs
      << " --budget " << args.budget << " --seed " << args.seed << " --etas ";
  for (std::size_t i = 0; i < etas.size(); ++i) {
    inv << (i ? "," : "") << fmt_shortest(etas[i]);
  }
  inv << " --rho-cons ";
  for (std::size_t i = 0; i < rho_cons.size(); ++i) {
    inv << (i ? "," : "") << fmt_shortest(rho_cons[i]);
  }
  inv << " --variants ";
  for (std::size_t i = 0; i < variant_names.size(); ++i) {
    inv << (i ? "," : "") << variant_names[i];
  }
  const std::string invocation = inv.str();

  const std::vector<ras::AblationCell> cells = ras::run_ablation_grid(
      objective, etas, rho_cons, variants, seeds, args.budget, args.parallel);

  fs::create_directories(args.out_dir);
  const fs::path grid_path = fs::path(args.out_dir) / "grid.csv";
  std::ofstream out = open_out(grid_path);
  out << "# " << invocation << "\n";
  out << "eta,rho_con,variant,q1,median,q3,min,max,mean,n_seeds,failed_runs\n";
  for (const ras::AblationCell& c : cells) {
    out << fmt_shortest(c.eta) << ',' << fmt_shortest(c.rho_con) << ','
        << ras::to_string(c.variant) << ',' << fmt17(c.q1) << ','
        << fmt17(c.median) << ',' << fmt17(c.q3) << ',' << fmt17(c.min) << ','
        << fmt17(c.max) << ',' << fmt17(c.mean) << ','
        << c.finals.size() + static_cast<std::size_t>(c.failed_runs) << ','
        << c.failed_runs << '\n';
  }

  std::cout << objective.name() << ": " << cells.size() << " cells x "
            << n_runs << " seeds -> " << grid_path.string() << "\n";
  return 0;
}

int cmd_appendix(const CommonArgs& args, bool angles, bool success,
                 const std::vector<int>& dims, const std::vector<double>& ratios,
                 long long samples) {
  if (!angles && !success) {
    angles = true;  // no selector: produce both tables
    success = true;
  }
  fs::create_directories(args.out_dir);
  std::vector<std::string> written;

  if (angles) {
    const long long n = samples > 0 ? samples : 10000;
    std::ostringstream inv;
    inv << "ras appendix --angles --dims ";
    for (std::size_t i = 0; i < dims.size(); ++i) {
      inv << (i ? "," : "") << dims[i];
    }
    inv << " --samples " << n << " --seed " << args.seed;

    const std::vector<ras::AngleTableRow> rows =
        ras::angle_table(dims, n, args.seed, args.parallel);
    const fs::path path = fs::path(args.out_dir) / "angles.csv";
    std::ofstream out = open_out(path);
    out << "# " << inv.str() << "\n";
    out << "dim,avg_angle_deg,std_error_deg,n_samples\n";
    for (const ras::AngleTableRow& r : rows) {
      out << r.dim << ',' << fmt17(r.avg_angle_deg) << ','
          << fmt17(r.std_error_deg) << ',' << r.n_samples << '\n';
    }
    written.push_back(path.string());
  }

  if (success) {
    const long long n = samples > 0 ? samples : 100000;
    std::ostringstream inv;
    inv << "ras appendix --success --dims ";
    for (std::size_t i = 0; i < dims.size(); ++i) {
      inv << (i ? "," : "") << dims[i];
    }
    inv << " --ratios ";
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      inv << (i ? "," : "") << fmt_shortest(ratios[i]);
    }
    inv << " --samples " << n << " --seed " << args.seed;

    const std::vector<ras::SuccessProbRow> cells =
        ras::success_table(dims, ratios, n, args.seed, args.parallel);
    const fs::path path = fs::path(args.out_dir) / "success.csv";
    std::ofstream out = open_out(path);
    out << "# " << inv.str() << "\n";
    out << "ratio";
    for (int d : dims) out << ",d" << d;
    out << '\n';
    char buf[32];
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      std::snprintf(buf, sizeof buf, "%.3f", ratios[r]);
      out << buf;
      for (std::size_t c = 0; c < dims.size(); ++c) {
        std::snprintf(buf, sizeof buf, "%.2f",
                      cells[r * dims.size() + c].probability);
        out << ',' << buf;
      }
      out << '\n';
    }
    written.push_back(path.string());
  }

  std::cout << "appendix tables ->";
  for (const std::string& p : written) std::cout << ' ' << p;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reactive affine shaker: adaptive box local search"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "one optimization run");
  add_common_options(run_cmd, &run_args);

  CommonArgs campaign_args;
  int campaign_runs = 30;
  std::optional<double> filter_threshold;
  CLI::App* campaign_cmd =
      app.add_subcommand("campaign", "many seeds of one configuration");
  add_common_options(campaign_cmd, &campaign_args);
  campaign_cmd->add_option("--runs", campaign_runs, "number of seeds");
  campaign_cmd->add_option("--parallel", campaign_args.parallel,
                           "worker threads");
  campaign_cmd->add_option("--filter-threshold", filter_threshold,
                           "also summarize runs whose final value stays below "
                           "this threshold");

  CommonArgs ablation_args;
  int ablation_runs = 30;
  std::vector<double> etas(ras::default_ablation_etas());
  std::vector<double> rho_cons(ras::default_ablation_rho_cons());
  std::vector<std::string> variant_names{"full", "isotropic"};
  CLI::App* ablation_cmd =
      app.add_subcommand("ablation", "sweep eta, rho, and variant");
  add_common_options(ablation_cmd, &ablation_args);
  ablation_cmd->add_option("--runs", ablation_runs, "seeds per cell");
  ablation_cmd->add_option("--parallel", ablation_args.parallel,
                           "worker threads");
  ablation_cmd->add_option("--etas", etas, "initial box fractions")
      ->delimiter(',');
  ablation_cmd->add_option("--rho-cons", rho_cons, "contraction factors")
      ->delimiter(',');
  ablation_cmd->add_option("--variants", variant_names, "algorithm variants")
      ->delimiter(',');

  CommonArgs appendix_args;
  bool want_angles = false;
  bool want_success = false;
  std::vector<int> dims(ras::table_dims());
  std::vector<double> ratios(ras::table_ratios());
  long long samples = 0;
  CLI::App* appendix_cmd =
      app.add_subcommand("appendix", "Monte-Carlo geometry tables");
  appendix_cmd->add_flag("--angles", want_angles,
                         "average angle between random directions");
  appendix_cmd->add_flag("--success", want_success,
                         "double-shot success probabilities");
  appendix_cmd->add_option("--dims", dims, "dimensions")->delimiter(',');
  appendix_cmd->add_option("--ratios", ratios, "step/box radius ratios")
      ->delimiter(',');
  appendix_cmd->add_option("--samples", samples, "samples per table cell");
  appendix_cmd->add_option("--seed", appendix_args.seed, "base random seed");
  appendix_cmd->add_option("--out", appendix_args.out_dir, "output directory");
  appendix_cmd->add_option("--parallel", appendix_args.parallel,
                           "worker threads");
  appendix_cmd->add_option("--config", appendix_args.config_path,
                           "flat key=value file with defaults for these flags");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) {
      apply_config_file(run_cmd, run_args.config_path,
                        common_setters(&run_args));
      require_function(run_args);
      return cmd_run(run_args);
    }
    if (campaign_cmd->parsed()) {
      ConfigSetters setters = common_setters(&campaign_args);
      setters["runs"] = [&](const std::string& v) {
        campaign_runs = static_cast<int>(config_int(v));
      };
      setters["parallel"] = [&](const std::string& v) {
        campaign_args.parallel = static_cast<int>(config_int(v));
      };
      setters["filter-threshold"] = [&](const std::string& v) {
        filter_threshold = config_double(v);
      };
      apply_config_file(campaign_cmd, campaign_args.config_path, setters);
      require_function(campaign_args);
      return cmd_campaign(campaign_args, campaign_runs, filter_threshold);
    }
    if (ablation_cmd->parsed()) {
      ConfigSetters setters = common_setters(&ablation_args);
      setters["runs"] = [&](const std::string& v) {
        ablation_runs = static_cast<int>(config_int(v));
      };
      setters["parallel"] = [&](const std::string& v) {
        ablation_args.parallel = static_cast<int>(config_int(v));
      };
      setters["etas"] = [&](const std::string& v) {
        etas.clear();
        for (const std::string& item : config_list(v)) {
          etas.push_back(config_double(item));
        }
      };
      setters["rho-cons"] = [&](const std::string& v) {
        rho_cons.clear();
        for (const std::string& item : config_list(v)) {
          rho_cons.push_back(config_double(item));
        }
      };
      setters["variants"] = [&](const std::string& v) {
        variant_names = config_list(v);
      };
      apply_config_file(ablation_cmd, ablation_args.config_path, setters);
      require_function(ablation_args);
      return cmd_ablation(ablation_args, ablation_runs, etas, rho_cons,
                          variant_names);
    }
    if (appendix_cmd->parsed()) {
      ConfigSetters setters;
      const auto config_bool = [](const std::string& v) {
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ras::ConfigError("config value '" + v + "' is not a boolean");
      };
      setters["angles"] = [&](const std::string& v) {
        want_angles = config_bool(v);
      };
      setters["success"] = [&](const std::string& v) {
        want_success = config_bool(v);
      };
      setters["dims"] = [&](const std::string& v) {
        dims.clear();
        for (const std::string& item : config_list(v)) {
          dims.push_back(static_cast<int>(config_int(item)));
        }
      };
      setters["ratios"] = [&](const std::string& v) {
        ratios.clear();
        for (const std::string& item : config_list(v)) {
          ratios.push_back(config_double(item));
        }
      };
      setters["samples"] = [&](const std::string& v) {
        samples = config_int(v);
      };
      setters["seed"] = [&](const std::string& v) {
        appendix_args.seed = static_cast<std::uint64_t>(config_int(v));
      };
      setters["out"] = [&](const std::string& v) {
        appendix_args.out_dir = v;
      };
      setters["parallel"] = [&](const std::string& v) {
        appendix_args.parallel = static_cast<int>(config_int(v));
      };
      apply_config_file(appendix_cmd, appendix_args.config_path, setters);
      return cmd_appendix(appendix_args, want_angles, want_success, dims,
                          ratios, samples);
    }
    std::cerr << app.help();
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  } catch (const ras::UnavailableObjectiveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ras::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
