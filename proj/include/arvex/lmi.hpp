#pragma once

#include <optional>

#include "arvex/rng.hpp"
#include "arvex/tuple.hpp"

namespace arvex {

/// Feasibility set {y in R^k : F0 + sum_i y_i F_i >= 0} with all F_i
/// self-adjoint, plus the box |y_i| <= radius that keeps the cutting-plane
/// master problem compact. Callers derive radius from compactness of the
/// underlying spectrahedron.
struct LmiProblem {
  Matrix f0;
  std::vector<Matrix> fs;
  double radius = 1.0;

  int k() const { return static_cast<int>(fs.size()); }
  Eigen::Index m() const { return f0.rows(); }
  Matrix at(const RealVector& y) const;
  double min_eig_at(const RealVector& y) const;
};

enum class LmiStatus { Optimal, Stationary, Infeasible, MaxIter };

const char* to_string(LmiStatus s);

struct SolverResult {
  RealVector y;
  double objective = 0.0;
  LmiStatus status = LmiStatus::MaxIter;
  double min_eig = 0.0;  // lambda_min(F(y)), the feasibility certificate
  int iterations = 0;
};

/// Maximizes c^T y over the LMI slice by Kelley cutting planes: the minimum
/// eigenvector u of F(y) at an infeasible iterate contributes the valid cut
/// u*F0u + sum y_i u*F_i u >= 0; the polyhedral master problem is solved by a
/// dense simplex with lexicographic tie-breaking. Terminates when the master
/// argmax is itself feasible (then it is optimal within tolerance).
///
/// feas_level overrides the eigenvalue level that counts as feasible
/// (default -psd tolerance); iterated dilations lower it gradually so the
/// slack of earlier steps is not re-spent.
SolverResult max_linear(const LmiProblem& prob, const RealVector& c, const ToleranceConfig& cfg,
                        std::optional<double> feas_level = std::nullopt);

/// Maximizes lambda_min(F(y)) (concave) with the same cuts and an epigraph
/// variable. stop_above / stop_below allow early exit once feasibility at
/// that level is decided; pass nullopt to solve to the opt tolerance.
SolverResult max_min_eig(const LmiProblem& prob, const ToleranceConfig& cfg,
                         std::optional<double> stop_above = std::nullopt,
                         std::optional<double> stop_below = std::nullopt);

/// Local maximizer of ||y|| over the slice by conditional gradient: repeat
/// y <- argmax <y, .> (a random unit direction when y = 0) until the norm
/// stops improving. Monotone since each step maximizes the linearization of
/// the convex objective ||y||^2.
SolverResult local_norm_max(const LmiProblem& prob, const RealVector& start,
                            const ToleranceConfig& cfg, CounterRng& rng,
                            bool randomize_first = false,
                            std::optional<double> feas_level = std::nullopt);

}  // namespace arvex
