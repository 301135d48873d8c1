#include <doctest.h>

#include <cmath>

#include "arvex/complexify.hpp"
#include "helpers.hpp"

using namespace arvex;
using namespace arvex::testing;

namespace {
const ToleranceConfig cfg;

MatrixTuple imag_flip(double scale) {
  return complex_tuple({cmat({{0.0, Scalar(0, scale)}, {Scalar(0, -scale), 0.0}})});
}
}  // namespace

TEST_CASE("realification of a real tuple doubles it") {
  CounterRng rng(301);
  MatrixTuple x = random_self_adjoint(rng, 2, 2, Field::Real);
  x.field = Field::Complex;  // treat as complex with zero imaginary part
  Realification r = realify_tuple(x, cfg);
  CHECK(r.t.norm() == 0.0);
  for (int j = 0; j < 2; ++j) {
    CHECK((r.z[j].topLeftCorner(2, 2) - x[j]).norm() == 0.0);
    CHECK((r.z[j].bottomRightCorner(2, 2) - x[j]).norm() == 0.0);
    CHECK(r.z[j].topRightCorner(2, 2).norm() == 0.0);
  }
  CHECK(compress(r.z, r.v, cfg).distance(x) < 1e-12);
}

TEST_CASE("realification of the imaginary flip") {
  Realification r = realify_tuple(imag_flip(1.0), cfg);
  Matrix expect = mat({{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}});
  CHECK((r.z[0] - expect).norm() < 1e-15);
  CHECK(r.s.norm() == 0.0);
  CHECK((r.t[0] - mat({{0, 1}, {-1, 0}})).norm() == 0.0);
}

TEST_CASE("realification compresses back to the original") {
  CounterRng rng(307);
  for (int rep = 0; rep < 6; ++rep) {
    MatrixTuple x = random_self_adjoint(rng, 2, 3, Field::Complex);
    Realification r = realify_tuple(x, cfg);
    CHECK(r.z.field == Field::Real);
    CHECK(r.z.is_self_adjoint(1e-12));
    CHECK(compress(r.z, r.v, cfg).distance(x) < 1e-12);
  }
  CHECK_THROWS_AS(realify_tuple(complex_tuple({cmat({{0.0, 1.0}, {0.0, 0.0}})}), cfg), InputError);
}

TEST_CASE("real pencils realify without changing the spectrum") {
  CounterRng rng(311);
  Pencil p(random_self_adjoint(rng, 2, 2, Field::Real));
  RealifiedPencil rp = realify_pencil(p, cfg);
  CHECK_FALSE(rp.intersection_only);
  CHECK(rp.b.d() == 4);
  for (int rep = 0; rep < 4; ++rep) {
    MatrixTuple x = random_self_adjoint(rng, 2, 2, Field::Real);
    const double lhs = min_eigenvalue(eval_monic(p, x));
    const double rhs = min_eigenvalue(eval_monic(rp.b, x));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("complex pencils realify to the conjugation-closed intersection") {
  Pencil a(imag_flip(1.0));
  RealifiedPencil rp = realify_pencil(a, cfg);
  CHECK(rp.intersection_only);

  CounterRng rng(313);
  for (int rep = 0; rep < 6; ++rep) {
    // real members: the pencil and its conjugate agree, so membership matches
    MatrixTuple x = random_self_adjoint(rng, 1, 2, Field::Real);
    const bool in_a = is_member(a, x, cfg).member;
    const bool in_b = is_member(rp.b, x, cfg).member;
    CHECK(in_a == in_b);

    // the realified pencil cannot distinguish conjugate members
    MatrixTuple xc = random_self_adjoint(rng, 1, 2, Field::Complex);
    const double lhs = min_eigenvalue(eval_monic(rp.b, xc));
    const double rhs = min_eigenvalue(eval_monic(rp.b, xc.conjugate()));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("complex decomposition of the half-flip") {
  Pencil p = interval_pencil();
  CounterRng rng(317);
  MatrixTuple x = imag_flip(0.5);
  ExtremeDecomposition dec = complex_decompose(p, x, cfg, rng);

  CHECK(dec.bound == 2 * 2 * (1 + 1));
  CHECK(dec.total_size <= dec.bound);

  // every component is a +-1 scalar; the +1 mass is (I+X)/2 and the -1
  // mass is (I-X)/2, matching the eigendecomposition of X
  Matrix mass_plus = Matrix::Zero(2, 2);
  Matrix mass_minus = Matrix::Zero(2, 2);
  for (size_t i = 0; i < dec.components.size(); ++i) {
    REQUIRE(dec.components[i].rows == 1);
    const double value = std::real(dec.components[i][0](0, 0));
    CHECK(std::abs(std::abs(value) - 1.0) < 1e-6);
    CHECK(dec.flags[i].absolute_extreme);
    const Matrix vv = dec.isometries[i].adjoint() * dec.isometries[i];
    if (value > 0)
      mass_plus += vv;
    else
      mass_minus += vv;
  }
  // X = M+ - M- and M+ + M- = I give the masses (I +- X)/2, whose
  // eigenvalues {0.75, 0.25} are set by the spectrum of X
  Matrix xm = x[0];
  CHECK((mass_plus - 0.5 * (Matrix::Identity(2, 2) + xm)).norm() < 1e-6);
  CHECK((mass_minus - 0.5 * (Matrix::Identity(2, 2) - xm)).norm() < 1e-6);
}

TEST_CASE("complex decomposition reduces to the real one on real data") {
  Pencil p = interval_pencil();
  CounterRng rng(331);
  MatrixTuple x = scalar_member(0.0);
  x.field = Field::Complex;
  ExtremeDecomposition dec = complex_decompose(p, x, cfg, rng);

  Matrix rebuilt = Matrix::Zero(1, 1);
  Matrix resolution = Matrix::Zero(1, 1);
  for (size_t i = 0; i < dec.components.size(); ++i) {
    CHECK(std::abs(std::abs(std::real(dec.components[i][0](0, 0))) - 1.0) < 1e-6);
    rebuilt += dec.isometries[i].adjoint() * dec.components[i][0] * dec.isometries[i];
    resolution += dec.isometries[i].adjoint() * dec.isometries[i];
  }
  CHECK(std::abs(rebuilt(0, 0)) < 1e-8);
  CHECK(std::abs(resolution(0, 0) - 1.0) < 1e-8);
  CHECK(dec.total_size <= 4);
}

TEST_CASE("router picks the pipeline by field") {
  Pencil p = interval_pencil();
  CounterRng rng(337);
  ExtremeDecomposition real_dec = decompose(p, scalar_member(0.5), cfg, rng);
  CHECK(real_dec.bound == 2);
  CounterRng rng2(337);
  ExtremeDecomposition cplx_dec = decompose(p, imag_flip(0.5), cfg, rng2);
  CHECK(cplx_dec.bound == 8);
}

TEST_CASE("generic decompositions of complex members hold together") {
  CounterRng rng(347);
  Pencil p = generate_pencil(2, 2, rng);
  MatrixTuple x = generate_member(p, 2, Field::Complex, rng, cfg);
  ExtremeDecomposition dec = complex_decompose(p, x, cfg, rng);

  Matrix resolution = Matrix::Zero(2, 2);
  MatrixTuple rebuilt = MatrixTuple::zero(Field::Complex, 2, 2, 2);
  for (size_t i = 0; i < dec.components.size(); ++i) {
    resolution += dec.isometries[i].adjoint() * dec.isometries[i];
    for (int j = 0; j < 2; ++j)
      rebuilt[j] += dec.isometries[i].adjoint() * dec.components[i][j] * dec.isometries[i];
    CHECK(dec.flags[i].absolute_extreme);
    CHECK(is_irreducible(dec.components[i], Field::Complex, cfg));
  }
  CHECK((resolution - Matrix::Identity(2, 2)).norm() <= 1e-8);
  CHECK(rebuilt.distance(x) <= 1e-8);
  CHECK(dec.total_size <= 2 * 2 * (2 + 1));
}

TEST_CASE("real and complex arveson detection agree on real members") {
  CounterRng rng(353);
  int checked = 0;
  for (int rep = 0; rep < 10; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, rep % 2 ? 1.0 : 0.9, rng, cfg);
    MatrixTuple xc = x;
    xc.field = Field::Complex;
    const bool real_arv = is_arveson(p, x, cfg);
    const bool cplx_arv = dilation_subspace(p, xc, cfg).dim == 0;
    CHECK(real_arv == cplx_arv);
    ++checked;
  }
  CHECK(checked == 10);
}

TEST_CASE("realified members have doubled subspace dimension") {
  CounterRng rng(359);
  for (int rep = 0; rep < 6; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Complex, 1.0, rng, cfg);
    Realification r = realify_tuple(x, cfg);
    MatrixTuple zc = r.z;
    zc.field = Field::Complex;
    const int dim_x = dilation_subspace(p, x, cfg).dim;
    const int dim_z = dilation_subspace(p, zc, cfg).dim;
    CHECK(dim_z == 2 * dim_x);
  }
}
