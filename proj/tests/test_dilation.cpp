#include <doctest.h>

#include <cmath>

#include "arvex/dilation.hpp"
#include "helpers.hpp"

using namespace arvex;
using namespace arvex::testing;

namespace {

const ToleranceConfig cfg;

MatrixTuple unit_column() {
  return real_tuple({mat({{1}})});
}

double subspace_residual(const Pencil& p, const DilationSubspace& sub) {
  double worst = 0.0;
  const double anorm = p.a.norm();
  for (const auto& beta : sub.basis) {
    const Matrix lam = eval_homogeneous(p, beta);
    for (Eigen::Index c = 0; c < sub.kernel_basis.cols(); ++c)
      worst = std::max(worst,
                       (lam.adjoint() * sub.kernel_basis.col(c)).norm() /
                           (1.0 + anorm * beta.norm()));
  }
  return worst;
}

}  // namespace

TEST_CASE("dilation subspace of interior, boundary, and extreme points") {
  Pencil p = interval_pencil();

  // interior: trivial kernel, every direction qualifies
  DilationSubspace interior = dilation_subspace(p, scalar_member(0.0), cfg);
  CHECK(interior.dim == 1);
  CHECK(interior.kernel_basis.cols() == 0);

  // flip matrix: the two kernel vectors force the direction to zero
  MatrixTuple flip = real_tuple({mat({{0, 1}, {1, 0}})});
  CHECK(dilation_subspace(p, flip, cfg).dim == 0);

  // right endpoint: kernel vector e2 forces the direction to zero
  DilationSubspace endpoint = dilation_subspace(p, scalar_member(1.0), cfg);
  CHECK(endpoint.dim == 0);
  CHECK(endpoint.kernel_basis.cols() == 1);

  CHECK_THROWS_AS(dilation_subspace(p, scalar_member(2.0), cfg), InputError);
}

TEST_CASE("subspace basis annihilates the kernel") {
  CounterRng rng(101);
  for (int rep = 0; rep < 6; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 1.0, rng, cfg);
    DilationSubspace sub = dilation_subspace(p, x, cfg);
    CHECK(sub.dim <= 2 * 2);
    CHECK(subspace_residual(p, sub) <= cfg.kernel);
    // orthonormality of the basis
    for (size_t i = 0; i < sub.basis.size(); ++i) {
      for (size_t j = i; j < sub.basis.size(); ++j) {
        Scalar dot = 0.0;
        for (int k = 0; k < 2; ++k)
          dot += (sub.basis[i][k].adjoint() * sub.basis[j][k]).sum();
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("arveson detection on the interval") {
  Pencil p = interval_pencil();
  CHECK(is_arveson(p, scalar_member(1.0), cfg));
  CHECK_FALSE(is_arveson(p, scalar_member(0.0), cfg));
  CHECK(is_arveson(p, real_tuple({mat({{0, 1}, {1, 0}})}), cfg));
}

TEST_CASE("feasibility scale closed forms") {
  Pencil p = interval_pencil();
  CHECK(feasibility_scale(p, scalar_member(0.0), unit_column(), cfg) ==
        doctest::Approx(1.0).epsilon(1e-12));

  MatrixTuple doubled = real_tuple({mat({{2}})});
  CHECK(feasibility_scale(p, scalar_member(0.0), doubled, cfg) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK(feasibility_scale(p, scalar_member(0.5), unit_column(), cfg) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  // directions outside the subspace are rejected at boundary points
  Pencil p2(real_tuple({mat({{1, 0}, {0, -1}}), mat({{0, 1}, {1, 0}})}));
  MatrixTuple x = real_tuple({mat({{1}}), mat({{0}})});  // kernel at e2
  MatrixTuple bad = real_tuple({mat({{0}}), mat({{1}})});
  CHECK(is_member(p2, x, cfg).member);
  CHECK_THROWS_AS(feasibility_scale(p2, x, bad, cfg), InputError);
}

TEST_CASE("corner-zero dilations at the feasibility scale are members") {
  CounterRng rng(103);
  for (int rep = 0; rep < 6; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 1.0, rng, cfg);
    DilationSubspace sub = dilation_subspace(p, x, cfg);
    for (const auto& beta : sub.basis) {
      const double c0 = feasibility_scale(p, x, beta, cfg);
      MatrixTuple y = assemble_one_dilation(x, beta, c0, RealVector::Zero(2));
      CHECK(is_member(p, y, cfg).min_eig >= -1e-7);
    }
  }
}

TEST_CASE("members recover their dilation directions") {
  // any direction withheld from the subspace cannot border a member
  CounterRng rng(107);
  for (int rep = 0; rep < 4; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 1.0, rng, cfg);
    DilationSubspace sub = dilation_subspace(p, x, cfg);
    if (sub.dim == 2 * 2 || sub.kernel_basis.cols() == 0) continue;

    // combination inside the subspace dilates after scaling
    if (sub.dim > 0) {
      MatrixTuple beta = sub.basis.front();
      const double c0 = feasibility_scale(p, x, beta, cfg);
      MatrixTuple y = assemble_one_dilation(x, beta, c0, RealVector::Zero(2));
      CHECK(is_member(p, y, cfg).min_eig >= -1e-7);
    }

    // a random direction with mass outside the subspace never does
    MatrixTuple probe(Field::Real, {gaussian_matrix(rng, 2, 1), gaussian_matrix(rng, 2, 1)});
    bool outside = false;
    const Matrix lam = eval_homogeneous(p, probe);
    for (Eigen::Index c = 0; c < sub.kernel_basis.cols(); ++c)
      if ((lam.adjoint() * sub.kernel_basis.col(c)).norm() > 1e-4) outside = true;
    if (!outside) continue;
    for (double scale : {1.0, 0.1, 1e-3}) {
      MatrixTuple scaled = probe;
      for (auto& m : scaled.entries) m *= scale;
      LmiProblem prob;  // maximize the corner min-eigenvalue; must stay infeasible
      const Matrix lx = eval_monic(p, x);
      const Matrix lb = eval_homogeneous(p, scaled);
      const Eigen::Index dn = lx.rows(), d = p.d();
      prob.f0 = Matrix::Zero(dn + d, dn + d);
      prob.f0.topLeftCorner(dn, dn) = lx;
      prob.f0.topRightCorner(dn, d) = lb;
      prob.f0.bottomLeftCorner(d, dn) = lb.adjoint();
      prob.f0.bottomRightCorner(d, d) = Matrix::Identity(d, d);
      for (const auto& a : p.a.entries) {
        Matrix f = Matrix::Zero(dn + d, dn + d);
        f.bottomRightCorner(d, d) = a;
        prob.fs.push_back(std::move(f));
      }
      prob.radius = 8.0;
      SolverResult r = max_min_eig(prob, cfg, -cfg.psd, -cfg.psd);
      CHECK(r.min_eig < -cfg.psd);
    }
  }
}

TEST_CASE("maximal one-dilation of the centred interval point") {
  Pencil p = interval_pencil();
  CounterRng rng(109);
  DilationStep step = maximal_one_dilation(p, scalar_member(0.0), unit_column(), cfg, rng);
  CHECK(step.c == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(step.gamma_hat(0)) < 1e-6);
  CHECK(step.dim_before == 1);
  CHECK(step.dim_after == 0);
  CHECK((step.y_next[0] - mat({{0, 1}, {1, 0}})).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("maximal one-dilation of the off-centre interval point") {
  Pencil p = interval_pencil();
  CounterRng rng(113);
  DilationStep step = maximal_one_dilation(p, scalar_member(0.5), unit_column(), cfg, rng);
  CHECK(step.c == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-6));
  CHECK(step.gamma_hat(0) == doctest::Approx(-0.5).epsilon(1e-6));
  const RealVector eigs = self_adjoint_eigenvalues(step.y_next[0]);
  CHECK(eigs(0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(eigs(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rescaling the direction rescales the off-diagonal weight only") {
  Pencil p = interval_pencil();
  CounterRng rng(127);
  DilationStep unit_step = maximal_one_dilation(p, scalar_member(0.5), unit_column(), cfg, rng);
  MatrixTuple half = real_tuple({mat({{0.5}})});
  CounterRng rng2(127);
  DilationStep half_step = maximal_one_dilation(p, scalar_member(0.5), half, cfg, rng2);
  CHECK(half_step.c == doctest::Approx(2.0 * unit_step.c).epsilon(1e-6));
  CHECK((half_step.y_next[0] - unit_step.y_next[0]).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("full dilation of interval points") {
  Pencil p = interval_pencil();
  CounterRng rng(131);

  DilationTrace centred = arveson_dilation(p, scalar_member(0.0), cfg, rng);
  CHECK(centred.steps.size() == 1);
  CHECK((centred.y_out[0].cwiseAbs() - mat({{0, 1}, {1, 0}})).cwiseAbs().maxCoeff() < 1e-6);

  DilationTrace already = arveson_dilation(p, scalar_member(1.0), cfg, rng);
  CHECK(already.steps.empty());
  CHECK(already.y_out.distance(already.x_in) == 0.0);

  DilationTrace off = arveson_dilation(p, scalar_member(0.5), cfg, rng);
  CHECK(off.steps.size() == 1);
  const RealVector eigs = self_adjoint_eigenvalues(off.y_out[0]);
  CHECK(eigs(0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(eigs(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dilation refuses unbounded pencils") {
  Pencil ray(real_tuple({mat({{1}})}));
  CounterRng rng(137);
  CHECK_THROWS_WITH_AS(arveson_dilation(ray, scalar_member(0.0), cfg, rng),
                       "pencil not certified bounded (level-1 criterion)", InputError);
}

TEST_CASE("random dilations shrink the subspace and keep the compression") {
  CounterRng rng(139);
  for (int rep = 0; rep < 4; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member(p, 2, Field::Real, rng, cfg);
    DilationTrace trace = arveson_dilation(p, x, cfg, rng);

    CHECK(static_cast<int>(trace.steps.size()) <= trace.initial_dim());
    int prev = trace.initial_dim() + 1;
    for (const auto& step : trace.steps) {
      CHECK(step.dim_after < step.dim_before);
      CHECK(step.dim_before < prev + 1);
      prev = step.dim_after;
      CHECK(is_member(p, step.y_next, cfg).min_eig >= -10 * cfg.psd);
    }
    CHECK(is_arveson(p, trace.y_out, cfg));

    Matrix v = Matrix::Zero(trace.y_out.rows, x.rows);
    v.topLeftCorner(x.rows, x.rows) = Matrix::Identity(x.rows, x.rows);
    CHECK(compress(trace.y_out, v, cfg).distance(x) <= 1e-8);
  }
}

TEST_CASE("subspace dimension is additive over direct sums") {
  CounterRng rng(149);
  for (int rep = 0; rep < 5; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 1.0, rng, cfg);
    MatrixTuple z = generate_member_scaled(p, 1, Field::Real, 1.0, rng, cfg);
    const int dx = dilation_subspace(p, x, cfg).dim;
    const int dz = dilation_subspace(p, z, cfg).dim;
    const int dsum = dilation_subspace(p, direct_sum(x, z), cfg).dim;
    CHECK(dsum == dx + dz);
  }
}

TEST_CASE("subspace dimension is unitarily invariant") {
  CounterRng rng(151);
  for (int rep = 0; rep < 5; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, 1.0, rng, cfg);
    Matrix u = random_isometry(rng, 2, 2);
    CHECK(dilation_subspace(p, x, cfg).dim == dilation_subspace(p, conjugate_by(x, u), cfg).dim);
  }
}

TEST_CASE("real pencils see conjugate members identically") {
  CounterRng rng(157);
  for (int rep = 0; rep < 5; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Complex, 1.0, rng, cfg);
    CHECK(dilation_subspace(p, x, cfg).dim == dilation_subspace(p, x.conjugate(), cfg).dim);
  }
}
