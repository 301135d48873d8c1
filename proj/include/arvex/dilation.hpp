#pragma once

#include "arvex/lmi.hpp"
#include "arvex/tuple.hpp"

namespace arvex {

/// The space of column tuples b (g columns of length n) whose homogeneous
/// evaluation annihilates ker L(X): exactly the directions in which X
/// admits a nontrivial one-row dilation inside the spectrahedron. Its
/// dimension is 0 iff X sits on the Arveson boundary.
struct DilationSubspace {
  std::vector<MatrixTuple> basis;  // orthonormal n x 1 column tuples
  int dim = 0;                     // complex dimension over C, real over R
  Matrix kernel_basis;             // orthonormal columns spanning ker L(X)
};

DilationSubspace dilation_subspace(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg);

bool is_arveson(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg);

/// A scale c0 > 0 with L(X) - c0^2 Lambda(b) Lambda(b*) >= 0, i.e. the
/// corner-zero dilation [[X, c0 b],[c0 b*, 0]] stays in the spectrahedron:
/// c0 = sqrt(smallest nonzero eigenvalue of L(X) / ||Lambda(b)Lambda(b*)||).
double feasibility_scale(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta,
                         const ToleranceConfig& cfg);

/// One maximal one-row dilation: the off-diagonal scale c is pushed to its
/// supremum, then the corner gamma to a local norm maximum.
struct DilationStep {
  MatrixTuple beta_hat;   // unit column tuple
  double c = 0.0;
  RealVector gamma_hat;   // in R^g
  MatrixTuple y_next;     // (n+1) x (n+1), leading block exactly X
  int dim_before = 0;
  int dim_after = 0;
};

struct DilationTrace {
  std::vector<DilationStep> steps;
  MatrixTuple x_in;
  MatrixTuple y_out;

  int initial_dim() const { return steps.empty() ? 0 : steps.front().dim_before; }
  Eigen::Index final_size() const { return y_out.rows; }
};

/// Builds [[X, c*beta],[c*beta*, diag-free gamma]] as an (n+1)-tuple.
MatrixTuple assemble_one_dilation(const MatrixTuple& x, const MatrixTuple& beta_hat, double c,
                                  const RealVector& gamma);

/// Computes the maximal one-dilation of X in direction beta_hat: bisection
/// on the scale (each probe solves a min-eigenvalue maximization over
/// gamma), then a local norm maximization for the corner. Retries the local
/// stage with fresh random directions if the subspace dimension fails to
/// drop, and throws SolverError after five failures.
///
/// level_radius bounds the level-1 spectrahedron; pass a non-positive value
/// to have it computed from the pencil.
DilationStep maximal_one_dilation(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta_hat,
                                  const ToleranceConfig& cfg, CounterRng& rng,
                                  double level_radius = 0.0);

/// Iterates maximal one-dilations, always along the first basis vector of
/// the current dilation subspace, until the subspace vanishes. The output
/// is an Arveson extreme point holding X as its leading principal block;
/// the step count never exceeds the initial subspace dimension.
DilationTrace arveson_dilation(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg,
                               CounterRng& rng);

}  // namespace arvex
