#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ras/errors.hpp"
#include "ras/geometry.hpp"
#include "ras/rng.hpp"

using namespace ras;

namespace {

// Independent oracle for the rank-one box update: build the full update
// matrix M = I + (rho-1) * delta delta^T / ||delta||^2 and multiply.
Eigen::MatrixXd affine_oracle(const Eigen::MatrixXd& basis,
                              const Eigen::VectorXd& delta, double rho) {
  const Eigen::Index d = basis.rows();
  const Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(d, d) +
      (rho - 1.0) / delta.squaredNorm() * (delta * delta.transpose());
  return m * basis;
}

Eigen::MatrixXd random_basis(int d, Rng& rng) {
  Eigen::MatrixXd b(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) b(i, j) = rng.normal();
  }
  return b;
}

}  // namespace

TEST_CASE("domain bounds validate and measure") {
  const DomainBounds cube = DomainBounds::cube(3, -1.0, 2.0);
  CHECK(cube.dim() == 3);
  CHECK(cube.lower()(0) == -1.0);
  CHECK(cube.upper()(2) == 2.0);
  CHECK(cube.diagonal() == doctest::Approx(3.0 * std::sqrt(3.0)));

  Eigen::VectorXd inside(3), outside(3);
  inside << 0.0, 1.0, 2.0;
  outside << 0.0, 1.0, 2.5;
  CHECK(cube.contains(inside));
  CHECK_FALSE(cube.contains(outside));

  Eigen::VectorXd lo(2), hi(2);
  lo << 0.0, 1.0;
  hi << 1.0, 1.0;  // degenerate second coordinate
  CHECK_THROWS_AS(DomainBounds(lo, hi), ConfigError);
  CHECK_THROWS_AS(DomainBounds::cube(0, 0.0, 1.0), ConfigError);

  Eigen::VectorXd bad(2);
  bad << 0.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DomainBounds(Eigen::VectorXd::Zero(2), bad), ConfigError);
}

TEST_CASE("initial box is axis-aligned with eta-scaled edges") {
  SUBCASE("hypercube domain") {
    const DomainBounds bounds = DomainBounds::cube(100, -1.5, 1.5);
    const SearchBox box = init_box(bounds, 0.2);
    REQUIRE(box.dim() == 100);
    for (int j = 0; j < 100; ++j) {
      CHECK(box.basis().col(j).norm() == doctest::Approx(0.6).epsilon(1e-12));
      for (int i = 0; i < 100; ++i) {
        if (i != j) CHECK(box.basis()(i, j) == 0.0);
      }
    }
    // identical construction per axis means the ratio is exactly one
    CHECK(box_metrics(box).ratio == 1.0);
    CHECK(box.len_max() == doctest::Approx(bounds.diagonal()));
    CHECK(box.len_min() == doctest::Approx(1e-12 * bounds.diagonal()));
  }

  SUBCASE("uneven edges scale per coordinate") {
    Eigen::VectorXd lo(2), hi(2);
    lo << 0.0, 0.0;
    hi << 10.0, 1.0;
    const SearchBox box = init_box(DomainBounds(lo, hi), 0.2);
    CHECK(box.basis().col(0).norm() == doctest::Approx(2.0));
    CHECK(box.basis().col(1).norm() == doctest::Approx(0.2));
  }

  SUBCASE("eta at or above one is rejected, just below passes") {
    const DomainBounds unit = DomainBounds::cube(4, 0.0, 1.0);
    CHECK_THROWS_AS(init_box(unit, 1.0), ConfigError);
    CHECK_THROWS_AS(init_box(unit, 0.0), ConfigError);
    CHECK_THROWS_AS(init_box(unit, -0.3), ConfigError);
    const SearchBox box = init_box(unit, 0.999);
    CHECK(box.basis().col(0).norm() == doctest::Approx(0.999));
  }
}

TEST_CASE("search box constructor rejects degenerate bases") {
  CHECK_THROWS_AS(SearchBox(Eigen::MatrixXd::Zero(2, 2)), ConfigError);
  CHECK_THROWS_AS(SearchBox(Eigen::MatrixXd::Zero(0, 0)), ConfigError);
  CHECK_THROWS_AS(SearchBox(Eigen::MatrixXd::Ones(2, 3)), ConfigError);
  Eigen::MatrixXd nan_basis = Eigen::MatrixXd::Identity(2, 2);
  nan_basis(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(SearchBox{nan_basis}, ConfigError);
  // zero column among valid ones
  Eigen::MatrixXd one_zero = Eigen::MatrixXd::Identity(3, 3);
  one_zero(1, 1) = 0.0;
  CHECK_THROWS_AS(SearchBox{one_zero}, ConfigError);
}

TEST_CASE("displacement sampling stays inside the box span") {
  const SearchBox box(Eigen::MatrixXd::Identity(4, 4));
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Displacement d = sample_displacement(box, rng);
    REQUIRE(d.delta.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(d.delta(i) >= -1.0);
      CHECK(d.delta(i) <= 1.0);
    }
  }
}

TEST_CASE("displacement sampling is a pure function of the stream") {
  Eigen::MatrixXd basis(3, 3);
  Rng seed_rng(11);
  basis = random_basis(3, seed_rng);
  const SearchBox box(basis);

  Rng a(42), b(42);
  const Displacement da = sample_displacement(box, a);
  // manual replay: three symmetric uniforms, then basis * r
  Eigen::VectorXd r(3);
  for (int i = 0; i < 3; ++i) r(i) = b.uniform_symmetric();
  const Eigen::VectorXd expected = basis * r;
  for (int i = 0; i < 3; ++i) CHECK(da.delta(i) == expected(i));
}

TEST_CASE("displacement sampling gives up on a vanishing box") {
  // every combination of coefficients keeps ||delta||^2 below the floor
  const SearchBox tiny(Eigen::MatrixXd::Identity(2, 2) * 1e-15);
  Rng rng(3);
  CHECK_THROWS_AS(sample_displacement(tiny, rng), DegenerateSampleError);
}

TEST_CASE("affine update matches the hand-evaluated example") {
  // b = (1,0), delta = (1,1), rho = 0.2:
  // b' = b - 0.8 * (1/2) * delta = (0.6, -0.4)
  const SearchBox box(Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd delta(2);
  delta << 1.0, 1.0;
  const SearchBox out = apply_affine(box, Displacement{delta}, 0.2);
  CHECK(out.basis()(0, 0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(out.basis()(1, 0) == doctest::Approx(-0.4).epsilon(1e-14));
  // second column by symmetry: (−0.4, 0.6)
  CHECK(out.basis()(0, 1) == doctest::Approx(-0.4).epsilon(1e-14));
  CHECK(out.basis()(1, 1) == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("affine update scales along delta and fixes the rest") {
  const SearchBox box(Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd e1(2), e2(2);
  e1 << 1.0, 0.0;
  e2 << 0.0, 1.0;

  const SearchBox dilated = apply_affine(box, Displacement{e1}, 5.0);
  CHECK(dilated.basis()(0, 0) == doctest::Approx(5.0));
  CHECK(dilated.basis()(1, 0) == 0.0);
  // column orthogonal to delta is untouched
  CHECK(dilated.basis()(0, 1) == 0.0);
  CHECK(dilated.basis()(1, 1) == 1.0);
  const BoxMetrics m = box_metrics(dilated);
  CHECK(m.min_len == doctest::Approx(1.0));
  CHECK(m.max_len == doctest::Approx(5.0));
  CHECK(m.ratio == doctest::Approx(0.2));

  // rho = 1 is the identity, bitwise
  const SearchBox same = apply_affine(box, Displacement{e2}, 1.0);
  CHECK(same.basis() == box.basis());
}

TEST_CASE("affine update agrees with the dense-matrix oracle") {
  Rng rng(2024);
  for (int d : {2, 5, 20}) {
    for (int inst = 0; inst < 20; ++inst) {
      const Eigen::MatrixXd basis = random_basis(d, rng);
      Eigen::VectorXd delta(d);
      for (int i = 0; i < d; ++i) delta(i) = rng.normal();
      const double rho = 0.1 + 9.9 * rng.uniform01();

      const SearchBox out =
          apply_affine(SearchBox(basis), Displacement{delta}, rho);
      const Eigen::MatrixXd expected = affine_oracle(basis, delta, rho);
      CHECK((out.basis() - expected).cwiseAbs().maxCoeff() <
            1e-12 * expected.cwiseAbs().maxCoeff() + 1e-14);
    }
  }
}

TEST_CASE("affine update has the advertised spectral structure") {
  Rng rng(99);
  for (int d : {2, 10, 100}) {
    for (int inst = 0; inst < 10; ++inst) {
      Eigen::VectorXd delta(d);
      for (int i = 0; i < d; ++i) delta(i) = rng.normal();
      const double rho = (inst % 2 == 0) ? 5.0 : 0.2;

      // delta itself is an eigenvector with eigenvalue rho
      Eigen::MatrixXd one_col(d, d);
      one_col.setIdentity();
      one_col.col(0) = delta;
      const SearchBox mapped =
          apply_affine(SearchBox(one_col), Displacement{delta}, rho);
      CHECK((mapped.basis().col(0) - rho * delta).norm() <=
            1e-12 * delta.norm() * rho);

      // any vector orthogonal to delta is fixed
      Eigen::VectorXd w(d);
      for (int i = 0; i < d; ++i) w(i) = rng.normal();
      w -= w.dot(delta) / delta.squaredNorm() * delta;
      one_col.col(0) = w;
      const SearchBox fixed =
          apply_affine(SearchBox(one_col), Displacement{delta}, rho);
      CHECK((fixed.basis().col(0) - w).norm() <= 1e-12 * w.norm());

      // the map multiplies volume by rho
      const Eigen::MatrixXd m =
          Eigen::MatrixXd::Identity(d, d) +
          (rho - 1.0) / delta.squaredNorm() * (delta * delta.transpose());
      CHECK(m.determinant() == doctest::Approx(rho).epsilon(1e-12));
    }
  }
}

TEST_CASE("affine update is bitwise invariant to the sign of delta") {
  Rng rng(5);
  for (int inst = 0; inst < 25; ++inst) {
    const int d = 2 + inst % 7;
    const Eigen::MatrixXd basis = random_basis(d, rng);
    Eigen::VectorXd delta(d);
    for (int i = 0; i < d; ++i) delta(i) = rng.normal();
    const double rho = inst % 2 == 0 ? 5.0 : 0.2;

    const SearchBox plus =
        apply_affine(SearchBox(basis), Displacement{delta}, rho);
    const SearchBox minus = apply_affine(
        SearchBox(basis), Displacement{Eigen::VectorXd(-delta)}, rho);
    CHECK(plus.basis() == minus.basis());
  }
}

TEST_CASE("affine dilation and its reciprocal cancel") {
  Rng rng(17);
  const Eigen::MatrixXd basis = random_basis(5, rng);
  Eigen::VectorXd delta(5);
  for (int i = 0; i < 5; ++i) delta(i) = rng.normal();

  const SearchBox there =
      apply_affine(SearchBox(basis), Displacement{delta}, 5.0);
  const SearchBox back = apply_affine(there, Displacement{delta}, 0.2);
  CHECK((back.basis() - basis).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("affine update rejects bad inputs") {
  const SearchBox box(Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd delta(2), tiny(2), wrong(3);
  delta << 1.0, 0.0;
  tiny << 1e-15, 0.0;
  wrong << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(apply_affine(box, Displacement{delta}, 0.0),
                  PreconditionError);
  CHECK_THROWS_AS(apply_affine(box, Displacement{delta}, -2.0),
                  PreconditionError);
  CHECK_THROWS_AS(apply_affine(box, Displacement{tiny}, 5.0),
                  PreconditionError);
  CHECK_THROWS_AS(apply_affine(box, Displacement{wrong}, 5.0),
                  PreconditionError);
}

TEST_CASE("isotropic rescale touches every vector") {
  const SearchBox box(Eigen::MatrixXd::Identity(3, 3));
  const SearchBox shrunk = apply_isotropic(box, 0.2);
  for (int j = 0; j < 3; ++j) {
    CHECK(shrunk.basis().col(j).norm() == doctest::Approx(0.2));
  }
  CHECK(apply_isotropic(box, 1.0).basis() == box.basis());

  // inverse factors restore the box
  const SearchBox again = apply_isotropic(apply_isotropic(box, 5.0), 0.2);
  CHECK((again.basis() - box.basis()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(apply_isotropic(box, 0.0), PreconditionError);
}

TEST_CASE("length clamping keeps basis norms inside the interval") {
  // clamp interval [0.01, 2]
  const SearchBox box(Eigen::MatrixXd::Identity(2, 2), 0.01, 2.0);

  SearchBox grown = box;
  for (int k = 0; k < 10; ++k) grown = apply_isotropic(grown, 5.0);
  for (int j = 0; j < 2; ++j) {
    CHECK(grown.basis().col(j).norm() <= 2.0 * (1.0 + 1e-12));
  }

  SearchBox shrunk = box;
  for (int k = 0; k < 10; ++k) shrunk = apply_isotropic(shrunk, 0.2);
  for (int j = 0; j < 2; ++j) {
    CHECK(shrunk.basis().col(j).norm() >= 0.01 * (1.0 - 1e-12));
  }
  CHECK(box_collapsed(shrunk));
  CHECK_FALSE(box_collapsed(box));

  // affine contraction along one direction leaves the rest above the floor
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  SearchBox squeezed = box;
  for (int k = 0; k < 12; ++k) {
    squeezed = apply_affine(squeezed, Displacement{e1}, 0.2);
  }
  CHECK(box_metrics(squeezed).min_len >= 0.01 * (1.0 - 1e-12));
  CHECK_FALSE(box_collapsed(squeezed));

  // an unclamped box never collapses
  const SearchBox raw(Eigen::MatrixXd::Identity(2, 2) * 1e-13);
  CHECK_FALSE(box_collapsed(raw));
}

TEST_CASE("box metrics pick the dominant vector deterministically") {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(3, 3);
  basis(0, 0) = 1.0;
  basis(1, 1) = 5.0;
  basis(2, 2) = 5.0;  // tie with column 1
  const BoxMetrics m = box_metrics(SearchBox(basis));
  CHECK(m.min_len == doctest::Approx(1.0));
  CHECK(m.max_len == doctest::Approx(5.0));
  CHECK(m.ratio == doctest::Approx(0.2));
  CHECK(m.dominant_index == 1);  // lowest index wins the tie
  CHECK(m.dominant(1) == 5.0);
}

TEST_CASE("line angles fold into the first quadrant") {
  Eigen::VectorXd e1(2), e2(2), diag(2), zero(2);
  e1 << 1.0, 0.0;
  e2 << 0.0, 1.0;
  diag << 2.0, 2.0;
  zero << 0.0, 0.0;

  CHECK(angle_between(e1, e1) == 0.0);
  CHECK(angle_between(e1, Eigen::VectorXd(-e1)) == 0.0);
  CHECK(angle_between(e1, e2) == doctest::Approx(1.5707963267948966));
  CHECK(angle_between(e1, diag) == doctest::Approx(0.7853981633974483));
  CHECK(angle_between(e1, Eigen::VectorXd(-diag)) ==
        doctest::Approx(0.7853981633974483));
  CHECK_THROWS_AS(angle_between(e1, zero), PreconditionError);
  Eigen::VectorXd three(3);
  three << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(angle_between(e1, three), PreconditionError);
}

TEST_CASE("sampled displacements have zero mean within monte-carlo error") {
  Eigen::MatrixXd basis(2, 2);
  basis << 0.8, -0.3, 0.1, 1.2;
  const SearchBox box(basis);
  Rng rng(31);

  const int n = 100000;
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  for (int s = 0; s < n; ++s) {
    sum += sample_displacement(box, rng).delta;
  }
  const Eigen::Vector2d mean = sum / n;
  // Var(delta_i) = sum_j basis(i,j)^2 / 3 for coefficients uniform on [-1,1]
  for (int i = 0; i < 2; ++i) {
    const double var = basis.row(i).squaredNorm() / 3.0;
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean(i)) < 3.0 * se);
  }
}
