#include "ras/benchmarks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "ras/errors.hpp"
#include "ras/rng.hpp"

namespace ras {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Objective make_rosenbrock(int dim) {
  if (dim < 2) throw ConfigError("rosenbrock needs dimension >= 2");
  auto fn = [](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x(i + 1) - x(i) * x(i);
      const double b = 1.0 - x(i);
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  // The wide 2-D window keeps the start points far from the valley; higher
  // dimensions use the classical hypercube.
  DomainBounds bounds = dim == 2 ? DomainBounds::cube(2, -2.0, 6.0)
                                 : DomainBounds::cube(dim, -2.048, 2.048);
  Optimum opt{Eigen::VectorXd::Ones(dim), 0.0};
  return Objective("rosenbrock" + std::to_string(dim), fn, std::move(bounds),
                   std::move(opt));
}

Objective make_paraboloid(int dim) {
  if (dim < 1) throw ConfigError("paraboloid needs dimension >= 1");
  auto fn = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  Optimum opt{Eigen::VectorXd::Zero(dim), 0.0};
  return Objective("paraboloid" + std::to_string(dim), fn,
                   DomainBounds::cube(dim, -1.5, 1.5), std::move(opt));
}

Objective make_branin() {
  // standard constants
  const double a = 1.0;
  const double b = 5.1 / (4.0 * kPi * kPi);
  const double c = 5.0 / kPi;
  const double r = 6.0;
  const double s = 10.0;
  const double t = 1.0 / (8.0 * kPi);
  auto fn = [=](const Eigen::VectorXd& x) {
    const double u = x(1) - b * x(0) * x(0) + c * x(0) - r;
    return a * u * u + s * (1.0 - t) * std::cos(x(0)) + s;
  };
  Eigen::VectorXd lower(2), upper(2), best(2);
  lower << -5.0, 0.0;
  upper << 10.0, 15.0;
  best << kPi, 2.275;  // one of the three global minimizers
  Optimum opt{std::move(best), 5.0 / (4.0 * kPi)};
  return Objective("branin2", fn,
                   DomainBounds(std::move(lower), std::move(upper)),
                   std::move(opt));
}

Objective make_hartmann6() {
  // canonical 4-term constants
  static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
  static const double A[4][6] = {
      {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
      {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
      {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
      {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
  };
  static const double P[4][6] = {
      {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
      {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
      {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
      {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
  };
  auto fn = [](const Eigen::VectorXd& x) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      double e = 0.0;
      for (int j = 0; j < 6; ++j) {
        const double d = x(j) - P[i][j];
        e += A[i][j] * d * d;
      }
      sum += alpha[i] * std::exp(-e);
    }
    return -sum;
  };
  // Minimizer refined by local descent from the published 5-decimal point.
  Eigen::VectorXd best(6);
  best << 0.20168950973659647, 0.15001069358599736, 0.47687397264004305,
      0.27533242820319936, 0.3116516169727084, 0.6573005359863079;
  Optimum opt{std::move(best), -3.3223680114155147};
  return Objective("hartmann6", fn, DomainBounds::cube(6, 0.0, 1.0),
                   std::move(opt));
}

Eigen::MatrixXd random_rotation(int dim, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("rotation dimension must be positive");
  Rng rng(seed);
  Eigen::MatrixXd g(dim, dim);
  for (int j = 0; j < dim; ++j) {          // column-major draw order
    for (int i = 0; i < dim; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the QR sign ambiguity (diag(R) > 0), then flip one column if needed
  // so the result is a proper rotation (determinant +1).
  const Eigen::MatrixXd& qr_mat = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    if (qr_mat(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(dim - 1) = -q.col(dim - 1);
  return q;
}

Objective embed(const Objective& base, const EmbeddingSpec& spec) {
  const int k = base.dim();
  const int D = spec.ambient_dim;
  if (D < k) throw ConfigError("ambient dimension is smaller than the base");
  if (static_cast<int>(spec.active_indices.size()) != k) {
    throw ConfigError("need exactly one active index per base dimension");
  }
  std::set<int> seen;
  for (int idx : spec.active_indices) {
    if (idx < 0 || idx >= D) throw ConfigError("active index out of range");
    if (!seen.insert(idx).second) {
      throw ConfigError("active indices must be distinct");
    }
  }
  if (spec.rotation) {
    if (spec.rotation->rows() != D || spec.rotation->cols() != D) {
      throw ConfigError("rotation must be ambient_dim x ambient_dim");
    }
    const double dev =
        (spec.rotation->transpose() * *spec.rotation -
         Eigen::MatrixXd::Identity(D, D))
            .cwiseAbs()
            .maxCoeff();
    if (dev > 1e-10) throw ConfigError("rotation matrix is not orthogonal");
  }

  const Eigen::VectorXd lo = base.bounds().lower();
  const Eigen::VectorXd hi = base.bounds().upper();
  auto fn = [base_fn = base, active = spec.active_indices,
             rotation = spec.rotation, lo, hi](const Eigen::VectorXd& x) {
    Eigen::VectorXd z(static_cast<Eigen::Index>(active.size()));
    if (rotation) {
      const Eigen::VectorXd y = *rotation * x;
      for (std::size_t j = 0; j < active.size(); ++j) z(j) = y(active[j]);
    } else {
      for (std::size_t j = 0; j < active.size(); ++j) z(j) = x(active[j]);
    }
    // map each picked coordinate from [-1, 1] onto the native interval
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      z(j) = lo(j) + 0.5 * (z(j) + 1.0) * (hi(j) - lo(j));
    }
    return base_fn(z);
  };

  std::string name = base.name() + "-" + std::to_string(D) +
                     (spec.rotation ? "r" : "");
  // Without rotation the preimage of the base minimizer (inactive
  // coordinates parked at 0) stays inside the ambient box, so an optimum
  // can be declared; the rotated preimage may fall outside it.
  std::optional<Optimum> opt;
  if (!spec.rotation && base.optimum()) {
    Eigen::VectorXd point = Eigen::VectorXd::Zero(D);
    for (int j = 0; j < k; ++j) {
      const double p = base.optimum()->point(j);
      point(spec.active_indices[j]) = 2.0 * (p - lo(j)) / (hi(j) - lo(j)) - 1.0;
    }
    opt = Optimum{std::move(point), base.optimum()->value};
  }
  return Objective(std::move(name), std::move(fn),
                   DomainBounds::cube(D, -1.0, 1.0), std::move(opt));
}

Objective make_benchmark(const std::string& name) {
  if (name == "rosenbrock2") return make_rosenbrock(2);
  if (name == "paraboloid100") return make_paraboloid(100);
  if (name == "branin2-500") {
    EmbeddingSpec spec;
    spec.ambient_dim = 500;
    spec.active_indices = {0, 1};
    return embed(make_branin(), spec);
  }
  if (name == "hartmann6-500r") {
    EmbeddingSpec spec;
    spec.ambient_dim = 500;
    spec.active_indices = {0, 1, 2, 3, 4, 5};
    spec.rotation = random_rotation(500, kRegistryRotationSeed);
    return embed(make_hartmann6(), spec);
  }
  if (name == "mopta08" || name == "svm388" || name == "lasso-hard" ||
      name == "lasso-high") {
    throw UnavailableObjectiveError(
        "unavailable: external suite (" + name +
        " needs a third-party codebase that is not distributed here)");
  }
  std::string available;
  for (const std::string& n : benchmark_names()) {
    if (!available.empty()) available += ", ";
    available += n;
  }
  throw ConfigError("unknown objective '" + name +
                    "'; available: " + available);
}

std::vector<std::string> benchmark_names() {
  return {"rosenbrock2", "paraboloid100", "branin2-500", "hartmann6-500r"};
}

}  // namespace ras
