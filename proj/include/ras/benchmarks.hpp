#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ras/objective.hpp"

namespace ras {

// Classic valley: sum of 100*(x_{i+1} - x_i^2)^2 + (1 - x_i)^2, minimum 0 at
// (1,...,1).  The 2-D instance lives on [-2, 6]^2; d >= 3 uses the classical
// [-2.048, 2.048]^d.  Requires d >= 2.
Objective make_rosenbrock(int dim);

// Convex bowl sum x_i^2 on [-1.5, 1.5]^d, minimum 0 at the origin.
Objective make_paraboloid(int dim);

// Two-dimensional test function with three global minimizers, each of value
// 5/(4*pi) ~ 0.397887, on [-5, 10] x [0, 15].
Objective make_branin();

// Six-dimensional multimodal function on [0, 1]^6 (4-term exponential
// family, standard constants); global minimum about -3.32237.
Objective make_hartmann6();

// Uniformly random rotation: QR of a seeded matrix of standard normals
// (drawn column-major), with the sign convention diag(R) > 0 for
// reproducibility, then corrected to determinant +1.
Eigen::MatrixXd random_rotation(int dim, std::uint64_t seed);

// Recipe for hiding a low-dimensional function inside a large ambient box.
struct EmbeddingSpec {
  int ambient_dim = 0;
  // Which rotated coordinates feed the base function; length must equal the
  // base dimension, entries distinct and in [0, ambient_dim).
  std::vector<int> active_indices;
  // Optional ambient_dim x ambient_dim orthogonal matrix applied to the
  // point before index selection (rotate, then project).
  std::optional<Eigen::MatrixXd> rotation;
};

// Wraps `base` into an objective on [-1, 1]^ambient_dim: the input is
// rotated (if a rotation is given), the active coordinates are picked out
// and each is mapped affinely from [-1, 1] onto the base domain edge, and
// `base` is evaluated there.  All other coordinates are ignored, so the
// optimum is highly degenerate.  Without rotation the wrapper declares an
// in-bounds optimum point (inactive coordinates at 0); with rotation the
// analytic preimage may leave the ambient box, so no optimum is declared.
Objective embed(const Objective& base, const EmbeddingSpec& spec);

// Named instances the experiment harness exposes:
//   rosenbrock2     2-D valley on [-2, 6]^2
//   paraboloid100   100-D bowl
//   branin2-500     Branin embedded in 500 ambient dimensions, no rotation
//   hartmann6-500r  Hartmann embedded in 500 dimensions with a fixed seeded
//                   rotation
// Names of external suites that are not distributed with this code raise
// UnavailableObjectiveError; unknown names raise ConfigError.
Objective make_benchmark(const std::string& name);

// All names make_benchmark accepts, in display order.
std::vector<std::string> benchmark_names();

// Rotation seed baked into the "hartmann6-500r" registry entry.
inline constexpr std::uint64_t kRegistryRotationSeed = 1;

}  // namespace ras
