#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ras {

// Which pieces of the full algorithm a run uses.  The ablations replace the
// direction-aware box update with a uniform rescale and/or drop the mirrored
// second trial.
enum class Variant {
  kFull,                 // double shot + direction-aware box update
  kIsotropic,            // double shot + uniform rescale
  kSingleShot,           // single trial + direction-aware box update
  kIsotropicSingleShot,  // single trial + uniform rescale
};

std::string to_string(Variant v);
std::optional<Variant> variant_from_string(const std::string& s);

// What one iteration of the search did.
enum class StepOutcome {
  kFirstShot,      // f(x + delta) improved; moved there, box dilated
  kSecondShot,     // only f(x - delta) improved; moved there, box dilated
  kDoubleFailure,  // no improvement; box contracted
};

std::string to_string(StepOutcome o);
std::optional<StepOutcome> step_outcome_from_string(const std::string& s);

// Why a run stopped.
enum class TerminationStatus {
  kBudgetExhausted,
  kStagnated,
  kBoxCollapsed,
};

std::string to_string(TerminationStatus s);

// Parameters of one optimization run.
struct RasConfig {
  double eta = 0.2;          // initial box edge as a fraction of the domain edge
  double rho_dil = 5.0;      // expansion factor after a successful trial
  double rho_con = 0.2;      // contraction factor after a failed iteration
  int max_evaluations = 10000;
  std::uint64_t seed = 0;
  Variant variant = Variant::kFull;

  // Optional early stop: quit after this many consecutive failed iterations.
  // Disabled by default; the evaluation budget is the primary stop.
  std::optional<int> stagnation_limit;

  // Optional early stop on box size: quit once the longest basis vector
  // drops below this fraction of the domain diagonal.
  std::optional<double> min_box_ratio_stop;

  // Throws ConfigError if any field is out of range
  // (0 < eta < 1, 0 < rho_con < 1 < rho_dil, max_evaluations >= 2, ...).
  void validate() const;
};

}  // namespace ras
