#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "arvex/errors.hpp"

namespace arvex {

enum class Field { Real, Complex };

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tolerances and iteration caps shared by every numerical decision.
struct ToleranceConfig {
  double sym = 1e-10;     // self-adjointness / isometry checks
  double psd = 1e-9;      // PSD slack: min eigenvalue >= -psd
  double kernel = 1e-8;   // relative threshold for kernel / rank decisions
  double opt = 1e-9;      // optimizer convergence
  int max_iter = 500;     // per solver call
  int verbosity = 0;      // 0 quiet, 1 info, 2 trace
};

/// A g-tuple of dense rows x cols matrices over R or C. Square self-adjoint
/// tuples are the points of a free spectrahedron; rectangular tuples hold
/// off-diagonal dilation blocks. Real tuples keep imaginary parts exactly
/// zero; one complex storage path serves both fields.
struct MatrixTuple {
  Field field = Field::Real;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<Matrix> entries;

  MatrixTuple() = default;
  MatrixTuple(Field f, std::vector<Matrix> ms);

  int g() const { return static_cast<int>(entries.size()); }
  bool square() const { return rows == cols; }

  const Matrix& operator[](int j) const { return entries.at(j); }
  Matrix& operator[](int j) { return entries.at(j); }

  /// Largest deviation of any entry from its conjugate transpose.
  double self_adjoint_defect() const;
  bool is_self_adjoint(double tol) const { return square() && self_adjoint_defect() <= tol; }

  /// Entry-wise conjugate transpose; swaps rows and cols.
  MatrixTuple adjoint() const;
  MatrixTuple conjugate() const;

  /// Frobenius norm of the stacked tuple.
  double norm() const;

  /// Max Frobenius distance entry-wise between two tuples of equal shape.
  double distance(const MatrixTuple& other) const;

  static MatrixTuple zero(Field f, int g, Eigen::Index rows, Eigen::Index cols);
  static MatrixTuple identity_like(Field f, int g, Eigen::Index n);
};

/// The defining d x d self-adjoint tuple of a linear matrix inequality
/// I + sum_j A_j x_j >= 0.
struct Pencil {
  MatrixTuple a;

  Pencil() = default;
  explicit Pencil(MatrixTuple tuple, double sym_tol = 1e-10);

  Eigen::Index d() const { return a.rows; }
  int g() const { return a.g(); }
};

/// I_{d*n} + sum_j A_j (x) X_j for square self-adjoint X (Kronecker products).
Matrix eval_monic(const Pencil& p, const MatrixTuple& x);

/// sum_j A_j (x) B_j for an arbitrary rectangular tuple B.
Matrix eval_homogeneous(const Pencil& p, const MatrixTuple& b);

struct MembershipReport {
  bool member = false;
  double min_eig = 0.0;
};

/// X is in the spectrahedron iff lambda_min(L(X)) >= -psd tolerance.
MembershipReport is_member(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg);

/// Level-1 recession-cone test: the spectrahedron is certified bounded iff
/// maximizing each +-x_i over {x : sum A_j x_j >= 0} gives 0. Sufficient for
/// generated instances; reported as the "level-1 criterion".
bool is_bounded(const Pencil& p, const ToleranceConfig& cfg);

/// Radius R with the level-1 spectrahedron contained in the inf-ball of
/// radius R. Requires a bounded pencil.
double level1_radius(const Pencil& p, const ToleranceConfig& cfg);

/// V* Y V componentwise for an isometry V (m x n, V*V = I_n).
MatrixTuple compress(const MatrixTuple& y, const Matrix& v, const ToleranceConfig& cfg);

/// Unchecked conjugation W* Y W for an arbitrary rectangular W.
MatrixTuple conjugate_by(const MatrixTuple& y, const Matrix& w);

/// Block-diagonal tuple diag(X, Z).
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& z);

/// Assembles the self-adjoint block tuple [[X, B],[B*, G]] with X n x n,
/// B n x l, G l x l.
MatrixTuple block2(const MatrixTuple& x, const MatrixTuple& b, const MatrixTuple& g);

/// Canonical shuffle: permutation sigma with
///   shuffled(sigma(r), sigma(c)) = L(Y)(r, c)
/// aligning the Kronecker ordering of a block tuple with the block matrix
/// of pencil evaluations. sizes are the block side lengths of Y.
std::vector<Eigen::Index> shuffle_permutation(Eigen::Index d, const std::vector<Eigen::Index>& sizes);

/// Applies the canonical shuffle to a d*sum(sizes) square matrix.
Matrix apply_shuffle(const Matrix& m, Eigen::Index d, const std::vector<Eigen::Index>& sizes);

/// Dense permutation matrix of the shuffle (for cross-checks).
Matrix shuffle_matrix(Eigen::Index d, const std::vector<Eigen::Index>& sizes);

/// Eigenvalues of a self-adjoint matrix, ascending.
RealVector self_adjoint_eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& m);

/// Zeroes imaginary parts when the field is real. Guards kernels that may
/// leave -0.0 or roundoff dust in the imaginary slots.
void enforce_field(MatrixTuple& t);

}  // namespace arvex
