#include "arvex/schur.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace arvex {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

double tuple_op_bound(const MatrixTuple& t) {
  double s = 0.0;
  for (const auto& m : t.entries) s += m.squaredNorm();
  return std::sqrt(s);
}

// Orthonormal kernel columns of a self-adjoint PSD-ish matrix.
Matrix kernel_columns(const Matrix& m, double kernel_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const RealVector vals = es.eigenvalues();
  const double top = vals.size() ? std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1))) : 0.0;
  const double thresh = kernel_tol * std::max(1.0, top);
  Eigen::Index k = 0;
  while (k < vals.size() && std::abs(vals(k)) <= thresh) ++k;
  return es.eigenvectors().leftCols(k);
}

bool range_compatible(const Matrix& kernel, const Matrix& block, double tol) {
  for (Eigen::Index c = 0; c < kernel.cols(); ++c)
    if ((block * kernel.col(c)).norm() > tol) return false;
  return true;
}

void check_agreement(bool direct, bool factored, bool indeterminate, const char* what) {
  if (!indeterminate && direct != factored) {
    std::ostringstream msg;
    msg << what << " oracles disagree (direct=" << (direct ? "psd" : "not psd")
        << ", factored=" << (factored ? "psd" : "not psd") << "); likely rank misjudgment";
    throw SolverError(msg.str());
  }
}

}  // namespace

Matrix pseudo_inverse(const Matrix& m, double kernel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double thresh = kernel_tol * std::max(smax, 1e-300);
  RealVector inv = RealVector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > thresh ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

SchurVerdict schur2_check(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta,
                          const MatrixTuple& gamma, const ToleranceConfig& cfg) {
  require(x.square() && gamma.square(), "diagonal blocks must be square");
  require(beta.rows == x.rows && beta.cols == gamma.rows, "off-diagonal block shape mismatch");
  require(x.g() == p.g() && beta.g() == p.g() && gamma.g() == p.g(), "tuple length mismatch");

  const Matrix lx = eval_monic(p, x);
  const Matrix lg = eval_monic(p, gamma);
  const Matrix lam = eval_homogeneous(p, beta);

  // Direct route: eigenvalues of the shuffled block matrix.
  Matrix block(lx.rows() + lg.rows(), lx.rows() + lg.rows());
  block.topLeftCorner(lx.rows(), lx.rows()) = lx;
  block.topRightCorner(lx.rows(), lg.rows()) = lam;
  block.bottomLeftCorner(lg.rows(), lx.rows()) = lam.adjoint();
  block.bottomRightCorner(lg.rows(), lg.rows()) = lg;

  SchurVerdict v;
  v.min_eig_direct = min_eigenvalue(block);
  v.psd_direct = v.min_eig_direct >= -cfg.psd;
  v.indeterminate = std::abs(v.min_eig_direct) < 10.0 * cfg.psd;

  // Factored route: corner block PSD, kernel compatibility, complement PSD.
  const double lg_min = min_eigenvalue(lg);
  const Matrix kernel = kernel_columns(lg, cfg.kernel);
  const double compat_tol = cfg.kernel * (1.0 + tuple_op_bound(p.a) * beta.norm());
  const bool compat = range_compatible(kernel, lam, compat_tol);
  const Matrix schur = lx - lam * pseudo_inverse(lg, cfg.kernel) * lam.adjoint();
  const double schur_min = min_eigenvalue(schur);
  v.min_eig_schur = std::min(lg_min, schur_min);
  v.psd_schur = lg_min >= -cfg.psd && compat && schur_min >= -cfg.psd;

  check_agreement(v.psd_direct, v.psd_schur, v.indeterminate, "Schur");
  v.psd = v.psd_direct;
  return v;
}

Ncldl3Result ncldl3(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta,
                    const MatrixTuple& eta, const MatrixTuple& gamma, const MatrixTuple& sigma,
                    const MatrixTuple& psi, const ToleranceConfig& cfg) {
  require(x.square() && gamma.square() && psi.square(), "diagonal blocks must be square");
  require(beta.rows == x.rows && beta.cols == gamma.rows, "beta block shape mismatch");
  require(eta.rows == x.rows && eta.cols == psi.rows, "eta block shape mismatch");
  require(sigma.rows == gamma.rows && sigma.cols == psi.rows, "sigma block shape mismatch");

  const Matrix lx = eval_monic(p, x);
  const Matrix lg = eval_monic(p, gamma);
  const Matrix lp = eval_monic(p, psi);
  const Matrix lam_b = eval_homogeneous(p, beta);
  const Matrix lam_e = eval_homogeneous(p, eta);
  const Matrix lam_s = eval_homogeneous(p, sigma);

  const Eigen::Index n1 = lx.rows(), n2 = lg.rows(), n3 = lp.rows();
  Matrix block(n1 + n2 + n3, n1 + n2 + n3);
  block.setZero();
  block.topLeftCorner(n1, n1) = lx;
  block.block(0, n1, n1, n2) = lam_b;
  block.block(0, n1 + n2, n1, n3) = lam_e;
  block.block(n1, 0, n2, n1) = lam_b.adjoint();
  block.block(n1, n1, n2, n2) = lg;
  block.block(n1, n1 + n2, n2, n3) = lam_s;
  block.block(n1 + n2, 0, n3, n1) = lam_e.adjoint();
  block.block(n1 + n2, n1, n3, n2) = lam_s.adjoint();
  block.bottomRightCorner(n3, n3) = lp;

  Ncldl3Result r;
  r.min_eig_direct = min_eigenvalue(block);
  r.psd_direct = r.min_eig_direct >= -cfg.psd;
  r.indeterminate = std::abs(r.min_eig_direct) < 10.0 * cfg.psd;

  const Matrix lx_pinv = pseudo_inverse(lx, cfg.kernel);
  r.pivot_x = lx;
  r.pivot_s = lp - lam_e.adjoint() * lx_pinv * lam_e;
  const Matrix w = lam_s.adjoint() - lam_e.adjoint() * lx_pinv * lam_b;
  const Matrix s_pinv = pseudo_inverse(r.pivot_s, cfg.kernel);
  r.pivot_third = lg - lam_b.adjoint() * lx_pinv * lam_b - w.adjoint() * s_pinv * w;

  r.l21 = lam_e.adjoint() * lx_pinv;
  r.l31 = lam_b.adjoint() * lx_pinv;
  r.l32 = w.adjoint() * s_pinv;

  const double scale = tuple_op_bound(p.a);
  const Matrix ker_x = kernel_columns(lx, cfg.kernel);
  const bool compat_x =
      range_compatible(ker_x, lam_b.adjoint(), cfg.kernel * (1.0 + scale * beta.norm())) &&
      range_compatible(ker_x, lam_e.adjoint(), cfg.kernel * (1.0 + scale * eta.norm()));
  const Matrix ker_s = kernel_columns(r.pivot_s, cfg.kernel);
  const bool compat_s =
      range_compatible(ker_s, w.adjoint(), cfg.kernel * (1.0 + w.norm()));

  r.psd_factored = min_eigenvalue(lx) >= -cfg.psd && compat_x &&
                   min_eigenvalue(r.pivot_s) >= -cfg.psd && compat_s &&
                   min_eigenvalue(r.pivot_third) >= -cfg.psd;

  check_agreement(r.psd_direct, r.psd_factored, r.indeterminate, "block LDL");
  r.psd = r.psd_direct;
  return r;
}

}  // namespace arvex
