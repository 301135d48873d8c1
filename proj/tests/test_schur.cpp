#include <doctest.h>

#include <cmath>

#include "arvex/schur.hpp"
#include "helpers.hpp"

using namespace arvex;
using namespace arvex::testing;

namespace {

const ToleranceConfig cfg;

MatrixTuple scaled_tuple(const MatrixTuple& t, double s) {
  MatrixTuple out = t;
  for (auto& m : out.entries) m *= s;
  return out;
}

}  // namespace

TEST_CASE("trivial borders reduce to plain membership") {
  Pencil p = interval_pencil();
  MatrixTuple zero_off = MatrixTuple::zero(Field::Real, 1, 1, 1);
  MatrixTuple zero_corner = MatrixTuple::zero(Field::Real, 1, 1, 1);

  SchurVerdict in = schur2_check(p, scalar_member(0.5), zero_off, zero_corner, cfg);
  CHECK(in.psd);
  CHECK(in.psd_direct == in.psd_schur);

  SchurVerdict out = schur2_check(p, scalar_member(1.5), zero_off, zero_corner, cfg);
  CHECK_FALSE(out.psd);
  CHECK_FALSE(out.indeterminate);
}

TEST_CASE("boundary dilation sits at equality") {
  Pencil p = interval_pencil();
  MatrixTuple beta = real_tuple({mat({{1}})});
  MatrixTuple corner = MatrixTuple::zero(Field::Real, 1, 1, 1);
  SchurVerdict v = schur2_check(p, scalar_member(0.0), beta, corner, cfg);
  CHECK(v.psd_direct);
  CHECK(std::abs(v.min_eig_direct) < 1e-12);
  CHECK(v.indeterminate);  // exactly on the decision boundary
}

TEST_CASE("the two psd routes agree away from the boundary") {
  CounterRng rng(401);
  int agreements = 0;
  for (int rep = 0; rep < 60; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 0.5 + 0.5 * rng.uniform01(), rng, cfg);
    MatrixTuple beta(Field::Real, {gaussian_matrix(rng, 2, 1), gaussian_matrix(rng, 2, 1)});
    beta = scaled_tuple(beta, 0.7 * rng.uniform01());
    MatrixTuple corner = random_self_adjoint(rng, 2, 1);
    corner = scaled_tuple(corner, 0.7 * rng.uniform01());
    SchurVerdict v = schur2_check(p, x, beta, corner, cfg);
    if (!v.indeterminate) {
      CHECK(v.psd_direct == v.psd_schur);
      ++agreements;
    }
  }
  CHECK(agreements >= 50);  // random draws land on the boundary rarely
}

TEST_CASE("block LDL specializations") {
  Pencil p = interval_pencil();
  const MatrixTuple x = scalar_member(0.0);
  const MatrixTuple unit = real_tuple({mat({{1}})});
  const MatrixTuple zero1 = MatrixTuple::zero(Field::Real, 1, 1, 1);

  SUBCASE("empty third row reduces to the two-block complement") {
    // eta = 0, sigma = 0, psi = 0: third pivot is L(gamma) - Q
    CounterRng rng(409);
    for (int rep = 0; rep < 10; ++rep) {
      MatrixTuple beta = real_tuple({gaussian_matrix(rng, 1, 1)});
      MatrixTuple gamma = random_self_adjoint(rng, 1, 1);
      Ncldl3Result r = ncldl3(p, scalar_member(0.3), beta, zero1, gamma, zero1, zero1, cfg);
      const Matrix lx = eval_monic(p, scalar_member(0.3));
      const Matrix lam = eval_homogeneous(p, beta);
      const Matrix q = lam.adjoint() * pseudo_inverse(lx, cfg.kernel) * lam;
      const Matrix expect = eval_monic(p, gamma) - q;
      CHECK((r.pivot_third - expect).norm() < 1e-12);
      CHECK((r.pivot_s - Matrix::Identity(2, 2)).norm() < 1e-12);
    }
  }

  SUBCASE("doubled direction reproduces the middle pivot identity") {
    // eta = c*beta, psi = 0: middle pivot is I - c^2 Q; at the worked
    // interval point Q = I so the pivot vanishes at c = 1
    Ncldl3Result r = ncldl3(p, x, unit, unit, zero1, zero1, zero1, cfg);
    CHECK(r.pivot_s.norm() < 1e-12);
    CHECK_FALSE(r.psd);  // the appendix block with a repeated direction fails
    CHECK_FALSE(r.indeterminate);
    CHECK(r.psd_direct == r.psd_factored);

    Ncldl3Result half = ncldl3(p, x, unit, scaled_tuple(unit, 0.5), zero1, zero1, zero1, cfg);
    const Matrix expect = Matrix::Identity(2, 2) * (1.0 - 0.25);
    CHECK((half.pivot_s - expect).norm() < 1e-12);
  }
}

TEST_CASE("block LDL route agrees with the direct eigenvalue route") {
  CounterRng rng(419);
  int determinate = 0;
  for (int rep = 0; rep < 40; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 0.4 + 0.5 * rng.uniform01(), rng, cfg);
    MatrixTuple beta(Field::Real, {gaussian_matrix(rng, 2, 1), gaussian_matrix(rng, 2, 1)});
    beta = scaled_tuple(beta, 0.5 * rng.uniform01());
    MatrixTuple eta(Field::Real, {gaussian_matrix(rng, 2, 2), gaussian_matrix(rng, 2, 2)});
    eta = scaled_tuple(eta, 0.5 * rng.uniform01());
    MatrixTuple sigma(Field::Real, {gaussian_matrix(rng, 1, 2), gaussian_matrix(rng, 1, 2)});
    sigma = scaled_tuple(sigma, 0.5 * rng.uniform01());
    MatrixTuple gamma = scaled_tuple(random_self_adjoint(rng, 2, 1), 0.6);
    MatrixTuple psi = scaled_tuple(random_self_adjoint(rng, 2, 2), 0.6);
    Ncldl3Result r = ncldl3(p, x, beta, eta, gamma, sigma, psi, cfg);
    if (!r.indeterminate) {
      CHECK(r.psd_direct == r.psd_factored);
      ++determinate;
    }
  }
  CHECK(determinate >= 30);
}

TEST_CASE("factors reassemble the block matrix") {
  CounterRng rng(421);
  for (int rep = 0; rep < 8; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    // strictly interior diagonal blocks keep every pivot invertible
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 0.5, rng, cfg);
    MatrixTuple gamma = generate_member_scaled(p, 1, Field::Real, 0.5, rng, cfg);
    MatrixTuple psi = generate_member_scaled(p, 2, Field::Real, 0.5, rng, cfg);
    MatrixTuple beta = scaled_tuple(
        MatrixTuple(Field::Real, {gaussian_matrix(rng, 2, 1), gaussian_matrix(rng, 2, 1)}), 0.1);
    MatrixTuple eta = scaled_tuple(
        MatrixTuple(Field::Real, {gaussian_matrix(rng, 2, 2), gaussian_matrix(rng, 2, 2)}), 0.1);
    MatrixTuple sigma = scaled_tuple(
        MatrixTuple(Field::Real, {gaussian_matrix(rng, 1, 2), gaussian_matrix(rng, 1, 2)}), 0.1);

    Ncldl3Result r = ncldl3(p, x, beta, eta, gamma, sigma, psi, cfg);

    const Matrix lx = eval_monic(p, x);
    const Matrix lg = eval_monic(p, gamma);
    const Matrix lp = eval_monic(p, psi);
    const Matrix lam_b = eval_homogeneous(p, beta);
    const Matrix lam_e = eval_homogeneous(p, eta);
    const Matrix lam_s = eval_homogeneous(p, sigma);

    // block matrix in the pivot order (x, psi, gamma)
    const Eigen::Index n1 = lx.rows(), n3 = lp.rows(), n2 = lg.rows();
    Matrix m = Matrix::Zero(n1 + n2 + n3, n1 + n2 + n3);
    m.topLeftCorner(n1, n1) = lx;
    m.block(0, n1, n1, n3) = lam_e;
    m.block(0, n1 + n3, n1, n2) = lam_b;
    m.block(n1, 0, n3, n1) = lam_e.adjoint();
    m.block(n1, n1, n3, n3) = lp;
    m.block(n1, n1 + n3, n3, n2) = lam_s.adjoint();
    m.block(n1 + n3, 0, n2, n1) = lam_b.adjoint();
    m.block(n1 + n3, n1, n2, n3) = lam_s;
    m.bottomRightCorner(n2, n2) = lg;

    Matrix l = Matrix::Identity(m.rows(), m.cols());
    l.block(n1, 0, n3, n1) = r.l21;
    l.block(n1 + n3, 0, n2, n1) = r.l31;
    l.block(n1 + n3, n1, n2, n3) = r.l32;
    Matrix d = Matrix::Zero(m.rows(), m.cols());
    d.topLeftCorner(n1, n1) = r.pivot_x;
    d.block(n1, n1, n3, n3) = r.pivot_s;
    d.bottomRightCorner(n2, n2) = r.pivot_third;

    CHECK((l * d * l.adjoint() - m).norm() <= 1e-8 * std::max(1.0, m.norm()));
  }
}
