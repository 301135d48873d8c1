#pragma once

#include "arvex/tuple.hpp"

namespace arvex {

/// Two-route PSD decision for the 2x2 block dilation [[X, B],[B*, G]]:
/// the direct eigenvalue test on the shuffled block matrix against the
/// Schur-complement test L(G) >= 0 and L(X) - Lambda(B) L(G)^+ Lambda(B*) >= 0
/// (with the kernel-compatibility condition of the pseudoinverse).
/// Instances with |lambda_min| < 10 * psd tolerance are reported
/// indeterminate instead of being compared; a firm disagreement throws
/// SolverError since it signals a rank misjudgment.
struct SchurVerdict {
  bool psd = false;        // the direct verdict
  bool psd_direct = false;
  bool psd_schur = false;
  bool indeterminate = false;
  double min_eig_direct = 0.0;
  double min_eig_schur = 0.0;  // min over the Schur pieces
};

SchurVerdict schur2_check(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta,
                          const MatrixTuple& gamma, const ToleranceConfig& cfg);

/// Block LDL* of the pencil evaluated on a 3x3 block tuple
///   [[X, B, H],[B*, G, S],[H*, S*, P]]
/// eliminating the X block, then the P block, then the G block:
///   pivot1 = L(X)
///   pivot2 = L(P)  - Lambda(H*) L(X)^+ Lambda(H)
///   pivot3 = L(G)  - Lambda(B*) L(X)^+ Lambda(B) - W* pivot2^+ W
///   W      = Lambda(S*) - Lambda(H*) L(X)^+ Lambda(B).
/// PSD iff all three pivots are PSD (plus pseudoinverse compatibility).
struct Ncldl3Result {
  bool psd = false;        // the direct verdict
  bool psd_direct = false;
  bool psd_factored = false;
  bool indeterminate = false;
  double min_eig_direct = 0.0;
  Matrix pivot_x;          // L(X)
  Matrix pivot_s;          // second pivot
  Matrix pivot_third;      // third pivot
  Matrix l21, l31, l32;    // unit-lower factors in (X, P, G) pivot order
};

Ncldl3Result ncldl3(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta,
                    const MatrixTuple& eta, const MatrixTuple& gamma, const MatrixTuple& sigma,
                    const MatrixTuple& psi, const ToleranceConfig& cfg);

/// Moore-Penrose pseudoinverse; singular values <= kernel_tol * sigma_max
/// are treated as zero.
Matrix pseudo_inverse(const Matrix& m, double kernel_tol);

}  // namespace arvex
