#include "ras/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ras/errors.hpp"

namespace ras {
namespace {

void check_basis(const Eigen::MatrixXd& basis) {
  if (basis.rows() == 0 || basis.rows() != basis.cols()) {
    throw ConfigError("search box basis must be a non-empty square matrix");
  }
  if (!basis.allFinite()) {
    throw ConfigError("search box basis has non-finite entries");
  }
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    if (!(basis.col(j).norm() > 0.0)) {
      throw ConfigError("search box basis vector " + std::to_string(j) +
                        " has zero norm");
    }
  }
}

// Pulls every column length back into [len_min, len_max].  A column whose
// direction was lost entirely (exact zero norm) is re-seeded along its
// coordinate axis at the floor length.
void clamp_lengths(Eigen::MatrixXd& basis, double len_min, double len_max) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const double n = basis.col(j).norm();
    if (n > len_max) {
      basis.col(j) *= len_max / n;
    } else if (n < len_min) {
      if (n > 0.0) {
        basis.col(j) *= len_min / n;
      } else {
        basis.col(j).setZero();
        basis(j, j) = len_min;
      }
    }
  }
}

}  // namespace

DomainBounds::DomainBounds(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() == 0 || lower_.size() != upper_.size()) {
    throw ConfigError("domain bounds must be non-empty and of equal length");
  }
  if (!lower_.allFinite() || !upper_.allFinite()) {
    throw ConfigError("domain bounds must be finite");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_(i) < upper_(i))) {
      throw ConfigError("domain bounds need lower < upper in coordinate " +
                        std::to_string(i));
    }
  }
}

DomainBounds DomainBounds::cube(int dim, double lo, double hi) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  return DomainBounds(Eigen::VectorXd::Constant(dim, lo),
                      Eigen::VectorXd::Constant(dim, hi));
}

bool DomainBounds::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lower_.size()) return false;
  return (x.array() >= lower_.array()).all() &&
         (x.array() <= upper_.array()).all();
}

SearchBox::SearchBox(Eigen::MatrixXd basis)
    : SearchBox(std::move(basis), 0.0,
                std::numeric_limits<double>::infinity()) {}

SearchBox::SearchBox(Eigen::MatrixXd basis, double len_min, double len_max)
    : basis_(std::move(basis)), len_min_(len_min), len_max_(len_max) {
  check_basis(basis_);
  if (!(len_min_ >= 0.0) || !(len_max_ > 0.0) || len_min_ > len_max_) {
    throw ConfigError("basis length clamp interval is invalid");
  }
}

SearchBox init_box(const DomainBounds& bounds, double eta) {
  if (!(eta > 0.0) || !(eta < 1.0)) {
    throw ConfigError("eta must lie in (0, 1)");
  }
  const int d = bounds.dim();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    basis(i, i) = eta * (bounds.upper()(i) - bounds.lower()(i));
  }
  const double len_max = bounds.diagonal();
  return SearchBox(std::move(basis), kLenMinFraction * len_max, len_max);
}

Displacement sample_displacement(const SearchBox& box, Rng& rng) {
  const int d = box.dim();
  Eigen::VectorXd r(d);
  Eigen::VectorXd delta(d);
  for (int attempt = 0; attempt <= kMaxDisplacementResamples; ++attempt) {
    for (int i = 0; i < d; ++i) r(i) = rng.uniform_symmetric();
    delta.noalias() = box.basis() * r;
    if (delta.squaredNorm() >= kMinDisplacementNormSq) {
      return Displacement{std::move(delta)};
    }
  }
  throw DegenerateSampleError(
      "displacement norm stayed below the degeneracy floor after " +
      std::to_string(1 + kMaxDisplacementResamples) + " draws");
}

SearchBox apply_affine(const SearchBox& box, const Displacement& delta,
                       double rho) {
  if (!(rho > 0.0)) throw PreconditionError("rho must be positive");
  const Eigen::VectorXd& dv = delta.delta;
  if (dv.size() != box.dim()) {
    throw PreconditionError("displacement dimension does not match the box");
  }
  const double nsq = dv.squaredNorm();
  if (!(nsq >= kMinDisplacementNormSq)) {
    throw PreconditionError("displacement norm is below the degeneracy floor");
  }
  // b_j += (rho-1) * (delta . b_j) / ||delta||^2 * delta, column by column.
  // Written so that negating delta flips the sign of both factors of the
  // coefficient product, leaving every term bitwise unchanged.
  Eigen::MatrixXd basis = box.basis();
  const double scale = (rho - 1.0) / nsq;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const double coef = scale * dv.dot(basis.col(j));
    basis.col(j) += coef * dv;
  }
  clamp_lengths(basis, box.len_min(), box.len_max());
  return SearchBox(std::move(basis), box.len_min(), box.len_max());
}

SearchBox apply_isotropic(const SearchBox& box, double rho) {
  if (!(rho > 0.0)) throw PreconditionError("rho must be positive");
  Eigen::MatrixXd basis = box.basis() * rho;
  clamp_lengths(basis, box.len_min(), box.len_max());
  return SearchBox(std::move(basis), box.len_min(), box.len_max());
}

BoxMetrics box_metrics(const SearchBox& box) {
  BoxMetrics m;
  m.min_len = std::numeric_limits<double>::infinity();
  m.max_len = 0.0;
  for (Eigen::Index j = 0; j < box.basis().cols(); ++j) {
    const double n = box.basis().col(j).norm();
    if (n < m.min_len) m.min_len = n;
    if (n > m.max_len) {  // strict: ties keep the lowest index
      m.max_len = n;
      m.dominant_index = static_cast<int>(j);
    }
  }
  m.ratio = m.min_len / m.max_len;
  m.dominant = box.basis().col(m.dominant_index);
  return m;
}

bool box_collapsed(const SearchBox& box) {
  if (!(box.len_min() > 0.0)) return false;
  // every vector within a rounding hair of the floor
  const double limit = box.len_min() * (1.0 + 1e-9);
  for (Eigen::Index j = 0; j < box.basis().cols(); ++j) {
    if (box.basis().col(j).norm() > limit) return false;
  }
  return true;
}

double angle_between(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) {
    throw PreconditionError("angle requires vectors of equal dimension");
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (!(nu > 0.0) || !(nv > 0.0)) {
    throw PreconditionError("angle is undefined for a zero vector");
  }
  double c = std::abs(u.dot(v)) / (nu * nv);
  if (c > 1.0) c = 1.0;  // guard acos against rounding overshoot
  return std::acos(c);
}

}  // namespace ras
