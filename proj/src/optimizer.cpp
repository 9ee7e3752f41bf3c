#include "ras/optimizer.hpp"

#include <cmath>
#include <utility>

#include "ras/errors.hpp"

namespace ras {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kIsotropic: return "isotropic";
    case Variant::kSingleShot: return "single-shot";
    case Variant::kIsotropicSingleShot: return "isotropic-single-shot";
  }
  return "?";
}

std::optional<Variant> variant_from_string(const std::string& s) {
  if (s == "full") return Variant::kFull;
  if (s == "isotropic") return Variant::kIsotropic;
  if (s == "single-shot") return Variant::kSingleShot;
  if (s == "isotropic-single-shot") return Variant::kIsotropicSingleShot;
  return std::nullopt;
}

std::string to_string(StepOutcome o) {
  switch (o) {
    case StepOutcome::kFirstShot: return "first_shot";
    case StepOutcome::kSecondShot: return "second_shot";
    case StepOutcome::kDoubleFailure: return "double_failure";
  }
  return "?";
}

std::optional<StepOutcome> step_outcome_from_string(const std::string& s) {
  if (s == "first_shot") return StepOutcome::kFirstShot;
  if (s == "second_shot") return StepOutcome::kSecondShot;
  if (s == "double_failure") return StepOutcome::kDoubleFailure;
  return std::nullopt;
}

std::string to_string(TerminationStatus s) {
  switch (s) {
    case TerminationStatus::kBudgetExhausted: return "budget_exhausted";
    case TerminationStatus::kStagnated: return "stagnated";
    case TerminationStatus::kBoxCollapsed: return "box_collapsed";
  }
  return "?";
}

void RasConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0, 1)");
  if (!(rho_con > 0.0 && rho_con < 1.0)) {
    throw ConfigError("rho_con must lie in (0, 1)");
  }
  if (!(rho_dil > 1.0) || !std::isfinite(rho_dil)) {
    throw ConfigError("rho_dil must be a finite value above 1");
  }
  if (max_evaluations < 2) {
    throw ConfigError("max_evaluations must be at least 2");
  }
  if (stagnation_limit && *stagnation_limit < 1) {
    throw ConfigError("stagnation_limit must be positive");
  }
  if (min_box_ratio_stop &&
      !(*min_box_ratio_stop > 0.0 && std::isfinite(*min_box_ratio_stop))) {
    throw ConfigError("min_box_ratio_stop must be a positive finite value");
  }
}

Eigen::VectorXd clamp_to_bounds(const Eigen::VectorXd& x,
                                const DomainBounds& bounds) {
  return x.cwiseMax(bounds.lower()).cwiseMin(bounds.upper());
}

RunState init_run(const Objective& objective, const RasConfig& config,
                  Rng& rng, const std::optional<Eigen::VectorXd>& x0) {
  config.validate();
  const DomainBounds& bounds = objective.bounds();
  const int d = objective.dim();

  Eigen::VectorXd x;
  if (x0) {
    if (x0->size() != d) {
      throw ConfigError("start point dimension does not match the objective");
    }
    if (!bounds.contains(*x0)) {
      throw ConfigError("start point lies outside the domain");
    }
    x = *x0;
  } else {
    x.resize(d);
    for (int i = 0; i < d; ++i) {
      x(i) = rng.uniform(bounds.lower()(i), bounds.upper()(i));
    }
  }

  const double fx = objective(x);
  // field order: x, f_x, box, evaluations_used, iterations, best_x, best_f,
  // consecutive_failures, saw_nonfinite, f_first_shot
  return RunState{x,
                  fx,
                  init_box(bounds, config.eta),
                  1,
                  0,
                  x,
                  fx,
                  0,
                  !std::isfinite(fx),
                  std::numeric_limits<double>::quiet_NaN()};
}

StepOutcome ras_step(RunState& state, const Objective& objective,
                     const RasConfig& config, Rng& rng) {
  if (state.evaluations_used >= config.max_evaluations) {
    throw PreconditionError("no evaluation budget left for a step");
  }
  const bool isotropic = config.variant == Variant::kIsotropic ||
                         config.variant == Variant::kIsotropicSingleShot;
  const bool double_shot = config.variant == Variant::kFull ||
                           config.variant == Variant::kIsotropic;

  const Displacement disp = sample_displacement(state.box, rng);
  const auto reshape = [&](double rho) {
    state.box = isotropic ? apply_isotropic(state.box, rho)
                          : apply_affine(state.box, disp, rho);
  };
  const auto evaluate = [&](const Eigen::VectorXd& cand) {
    const double f = objective(cand);
    ++state.evaluations_used;
    if (!std::isfinite(f)) state.saw_nonfinite = true;
    return f;
  };
  const auto move_to = [&](Eigen::VectorXd&& cand, double f) {
    state.x = std::move(cand);
    state.f_x = f;
    state.best_x = state.x;
    state.best_f = f;
    state.consecutive_failures = 0;
  };
  const auto improves = [&](double f) {
    return std::isfinite(f) && f < state.f_x;
  };

  StepOutcome outcome = StepOutcome::kDoubleFailure;
  Eigen::VectorXd cand = clamp_to_bounds(state.x + disp.delta,
                                         objective.bounds());
  const double f1 = evaluate(cand);
  state.f_first_shot = f1;

  if (improves(f1)) {
    move_to(std::move(cand), f1);
    reshape(config.rho_dil);
    outcome = StepOutcome::kFirstShot;
  } else if (double_shot &&
             state.evaluations_used < config.max_evaluations) {
    Eigen::VectorXd mirror = clamp_to_bounds(state.x - disp.delta,
                                             objective.bounds());
    const double f2 = evaluate(mirror);
    if (improves(f2)) {
      move_to(std::move(mirror), f2);
      reshape(config.rho_dil);
      outcome = StepOutcome::kSecondShot;
    } else {
      ++state.consecutive_failures;
      reshape(config.rho_con);
    }
  } else {
    ++state.consecutive_failures;
    reshape(config.rho_con);
  }
  ++state.iterations;
  return outcome;
}

RunResult run(const Objective& objective, const RasConfig& config,
              const std::optional<Eigen::VectorXd>& x0) {
  config.validate();
  Rng rng(config.seed);
  RunState state = init_run(objective, config, rng, x0);

  RunResult result;
  result.config = config;
  result.initial_f = state.f_x;
  result.trace.config = config;
  result.trace.initial_f = state.f_x;

  const double diagonal = objective.bounds().diagonal();
  TerminationStatus status = TerminationStatus::kBudgetExhausted;
  while (true) {
    if (state.evaluations_used >= config.max_evaluations) {
      status = TerminationStatus::kBudgetExhausted;
      break;
    }
    const BoxMetrics m = box_metrics(state.box);
    const bool at_floor = state.box.len_min() > 0.0 &&
                          m.max_len <= state.box.len_min() * (1.0 + 1e-9);
    const bool below_stop =
        config.min_box_ratio_stop &&
        m.max_len < *config.min_box_ratio_stop * diagonal;
    if (at_floor || below_stop) {
      status = TerminationStatus::kBoxCollapsed;
      break;
    }
    if (config.stagnation_limit &&
        state.consecutive_failures >= *config.stagnation_limit) {
      status = TerminationStatus::kStagnated;
      break;
    }
    const StepOutcome outcome = ras_step(state, objective, config, rng);
    result.trace.records.push_back(
        record_iteration(state, outcome, objective));
  }

  result.best_x = state.best_x;
  result.best_f = state.best_f;
  result.evaluations_used = state.evaluations_used;
  result.iterations = state.iterations;
  result.status = status;
  result.saw_nonfinite = state.saw_nonfinite;
  return result;
}

}  // namespace ras
