#pragma once

#include <Eigen/Dense>
#include <vector>

namespace arvex::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// maximize c^T x  s.t.  G x <= h,  lb <= x <= ub.
/// Dense two-phase tableau simplex with Bland's rule. When alternate optima
/// are detected and lexicographic is set, the result is refined to the
/// lexicographically smallest optimal vertex for reproducibility.
LpResult solve_lp(const Eigen::MatrixXd& g, const Eigen::VectorXd& h, const Eigen::VectorXd& c,
                  const Eigen::VectorXd& lb, const Eigen::VectorXd& ub, bool lexicographic = true);

}  // namespace arvex::detail
