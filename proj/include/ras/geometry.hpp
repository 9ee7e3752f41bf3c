#pragma once

#include <Eigen/Core>

#include "ras/rng.hpp"

namespace ras {

// A displacement whose squared norm falls below this threshold carries no
// usable direction information and is resampled.
inline constexpr double kMinDisplacementNormSq = 1e-24;

// How many fresh draws sample_displacement attempts after a degenerate one
// before giving up with DegenerateSampleError.
inline constexpr int kMaxDisplacementResamples = 16;

// Ratio of the basis-length floor to the basis-length cap: a box whose
// vectors may not exceed len_max is never allowed to shrink below
// 1e-12 * len_max, which keeps ||delta||^2 representable and the affine
// update well conditioned.
inline constexpr double kLenMinFraction = 1e-12;

// Axis-aligned rectangular domain.  lower/upper have one entry per
// coordinate with lower(i) < upper(i).
class DomainBounds {
 public:
  DomainBounds(Eigen::VectorXd lower, Eigen::VectorXd upper);

  // Hypercube [lo, hi]^dim.
  static DomainBounds cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  // Euclidean length of the box diagonal upper - lower.
  double diagonal() const { return (upper_ - lower_).norm(); }

  bool contains(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

// The local search region: a box spanned by d basis vectors, stored densely
// as the columns of a d x d matrix.  The box also carries the clamp interval
// [len_min, len_max] that every basis vector length is kept inside across
// updates; a default-constructed interval (0, +inf) disables clamping.
class SearchBox {
 public:
  explicit SearchBox(Eigen::MatrixXd basis);
  SearchBox(Eigen::MatrixXd basis, double len_min, double len_max);

  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  double len_min() const { return len_min_; }
  double len_max() const { return len_max_; }

 private:
  Eigen::MatrixXd basis_;  // column j is basis vector b_j
  double len_min_;
  double len_max_;
};

struct Displacement {
  Eigen::VectorXd delta;
};

// Shape diagnostics of a box.
struct BoxMetrics {
  double min_len = 0.0;      // shortest basis vector length
  double max_len = 0.0;      // longest basis vector length
  double ratio = 0.0;        // min_len / max_len, in (0, 1]
  int dominant_index = -1;   // column index of the longest vector
  Eigen::VectorXd dominant;  // the longest basis vector (lowest index on ties)
};

// Initial box for a domain: eta * (upper_i - lower_i) along each coordinate
// axis, i.e. a diagonal basis matrix.  Also fixes the clamp interval from
// the domain diagonal.  Requires 0 < eta < 1.
SearchBox init_box(const DomainBounds& bounds, double eta);

// Draws delta = sum_i r_i b_i with r_i ~ U[-1, 1), resampling (up to
// kMaxDisplacementResamples times) if ||delta||^2 < kMinDisplacementNormSq.
// Consumes exactly dim uniforms per attempt.
Displacement sample_displacement(const SearchBox& box, Rng& rng);

// Reshapes the box with the rank-one affine map
//   b_j <- (I + (rho - 1) * delta delta^T / ||delta||^2) b_j,
// which scales the component of each basis vector along delta by rho and
// leaves the orthogonal complement untouched.  rho > 1 dilates, rho < 1
// contracts.  The result is bitwise identical for delta and -delta.
// Requires rho > 0 and ||delta||^2 >= kMinDisplacementNormSq.
SearchBox apply_affine(const SearchBox& box, const Displacement& delta,
                       double rho);

// Direction-blind variant used by the ablation: every basis vector is
// scaled by rho outright.
SearchBox apply_isotropic(const SearchBox& box, double rho);

BoxMetrics box_metrics(const SearchBox& box);

// True when every basis vector sits at the clamp floor, i.e. the box cannot
// contract further and the search has stalled geometrically.
bool box_collapsed(const SearchBox& box);

// Angle in radians between the lines spanned by u and v, folded into
// [0, pi/2] (sign of either vector is irrelevant).  Requires both nonzero.
double angle_between(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace ras
