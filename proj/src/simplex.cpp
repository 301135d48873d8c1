#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace arvex::detail {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

// Full-tableau simplex on: max red^T v, M v = rhs, v >= 0, rhs >= 0.
// basis[i] is the column basic in row i. allowed masks columns that may
// enter (artificials are barred in phase 2). Bland's rule on both the
// entering and the leaving choice, so cycling cannot occur.
struct Tableau {
  Eigen::MatrixXd m;
  Eigen::VectorXd rhs;
  Eigen::VectorXd red;   // reduced costs
  std::vector<int> basis;

  int rows() const { return static_cast<int>(m.rows()); }
  int cols() const { return static_cast<int>(m.cols()); }

  void pivot(int row, int col) {
    const double p = m(row, col);
    m.row(row) /= p;
    rhs(row) /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double f = m(i, col);
      if (f == 0.0) continue;
      m.row(i) -= f * m.row(row);
      rhs(i) -= f * rhs(row);
      m(i, col) = 0.0;
    }
    const double f = red(col);
    if (f != 0.0) {
      red -= f * m.row(row).transpose();
      red(col) = 0.0;
    }
    basis[static_cast<size_t>(row)] = col;
  }

  LpStatus run(const std::vector<char>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (allowed[static_cast<size_t>(j)] && red(j) > kPivotTol) {
          enter = j;
          break;  // Bland: smallest improving index
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (m(i, enter) > kPivotTol) {
          const double ratio = rhs(i) / m(i, enter);
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol &&
               (leave < 0 || basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void set_objective(const Eigen::VectorXd& obj) {
    red = obj;
    for (int i = 0; i < rows(); ++i) {
      const int b = basis[static_cast<size_t>(i)];
      const double f = red(b);
      if (f != 0.0) {
        red -= f * m.row(i).transpose();
        red(b) = 0.0;
      }
    }
  }
};

struct OnceResult {
  LpResult lp;
  bool ties = false;  // a nonbasic non-artificial column has zero reduced cost
};

OnceResult solve_once(const Eigen::MatrixXd& g, const Eigen::VectorXd& h, const Eigen::VectorXd& c,
                      const Eigen::VectorXd& lb, const Eigen::VectorXd& ub) {
  const int p = static_cast<int>(c.size());
  const int mc = static_cast<int>(h.size());
  const int rows = mc + p;  // cuts plus upper bounds on the shifted variables

  // Shift z = x - lb >= 0 and append one slack per row; rows with negative
  // right-hand side are negated and given an artificial.
  Eigen::VectorXd hs(rows);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, p);
  if (mc > 0) {
    a.topRows(mc) = g;
    hs.head(mc) = h - g * lb;
  }
  for (int i = 0; i < p; ++i) {
    a(mc + i, i) = 1.0;
    hs(mc + i) = ub(i) - lb(i);
  }

  std::vector<char> negated(static_cast<size_t>(rows), 0);
  int n_art = 0;
  for (int i = 0; i < rows; ++i) {
    if (hs(i) < 0.0) {
      a.row(i) *= -1.0;
      hs(i) *= -1.0;
      negated[static_cast<size_t>(i)] = 1;
      ++n_art;
    }
  }

  const int total = p + rows + n_art;
  Tableau t;
  t.m = Eigen::MatrixXd::Zero(rows, total);
  t.rhs = hs;
  t.basis.assign(static_cast<size_t>(rows), -1);
  t.m.leftCols(p) = a;
  int art = 0;
  for (int i = 0; i < rows; ++i) {
    t.m(i, p + i) = negated[static_cast<size_t>(i)] ? -1.0 : 1.0;
    if (negated[static_cast<size_t>(i)]) {
      t.m(i, p + rows + art) = 1.0;
      t.basis[static_cast<size_t>(i)] = p + rows + art;
      ++art;
    } else {
      t.basis[static_cast<size_t>(i)] = p + i;
    }
  }

  std::vector<char> allow_all(static_cast<size_t>(total), 1);
  std::vector<char> allow_real(static_cast<size_t>(total), 1);
  for (int j = p + rows; j < total; ++j) allow_real[static_cast<size_t>(j)] = 0;

  if (n_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    for (int j = p + rows; j < total; ++j) phase1(j) = -1.0;
    t.set_objective(phase1);
    if (t.run(allow_all) == LpStatus::Unbounded) return {{LpStatus::Infeasible, {}, 0.0}, false};
    double art_sum = 0.0;
    for (int i = 0; i < rows; ++i)
      if (t.basis[static_cast<size_t>(i)] >= p + rows) art_sum += t.rhs(i);
    if (art_sum > kFeasTol * (1.0 + hs.cwiseAbs().maxCoeff()))
      return {{LpStatus::Infeasible, {}, 0.0}, false};
    for (int i = 0; i < rows; ++i) {
      if (t.basis[static_cast<size_t>(i)] < p + rows) continue;
      for (int j = 0; j < p + rows; ++j) {
        if (std::abs(t.m(i, j)) > 1e-7) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  Eigen::VectorXd obj = Eigen::VectorXd::Zero(total);
  obj.head(p) = c;
  t.set_objective(obj);
  if (t.run(allow_real) == LpStatus::Unbounded) return {{LpStatus::Unbounded, {}, 0.0}, false};

  OnceResult out;
  out.lp.status = LpStatus::Optimal;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(total);
  std::vector<char> is_basic(static_cast<size_t>(total), 0);
  for (int i = 0; i < rows; ++i) {
    const int b = t.basis[static_cast<size_t>(i)];
    z(b) = t.rhs(i);
    is_basic[static_cast<size_t>(b)] = 1;
  }
  out.lp.x = z.head(p) + lb;
  out.lp.objective = c.dot(out.lp.x);
  for (int j = 0; j < p + rows; ++j) {
    if (!is_basic[static_cast<size_t>(j)] && std::abs(t.red(j)) <= 1e-9) {
      out.ties = true;
      break;
    }
  }
  return out;
}

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& g, const Eigen::VectorXd& h, const Eigen::VectorXd& c,
                  const Eigen::VectorXd& lb, const Eigen::VectorXd& ub, bool lexicographic) {
  OnceResult base = solve_once(g, h, c, lb, ub);
  if (base.lp.status != LpStatus::Optimal || !lexicographic || !base.ties) return base.lp;

  // Tie-break to the lexicographically smallest optimal vertex: pin the
  // objective at its optimum, then minimize the coordinates in order. The
  // reported objective stays the base optimum, which callers use as a bound;
  // the refined vertex may sit a hair below it.
  const int p = static_cast<int>(c.size());
  const double scale = 1.0 + std::abs(base.lp.objective);
  Eigen::MatrixXd g2(g.rows() + 1, p);
  Eigen::VectorXd h2(h.size() + 1);
  if (g.rows() > 0) g2.topRows(g.rows()) = g;
  if (h.size() > 0) h2.head(h.size()) = h;
  g2.row(g.rows()) = -c.transpose();
  h2(h.size()) = -(base.lp.objective - 1e-12 * scale);

  Eigen::VectorXd x = base.lp.x;
  for (int i = 0; i < p; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(p);
    ei(i) = -1.0;  // minimize coordinate i on the optimal face
    OnceResult sub = solve_once(g2, h2, ei, lb, ub);
    if (sub.lp.status != LpStatus::Optimal) break;
    x(i) = sub.lp.x(i);
    if (i + 1 == p) break;
    Eigen::MatrixXd g3(g2.rows() + 1, p);
    Eigen::VectorXd h3(h2.size() + 1);
    g3.topRows(g2.rows()) = g2;
    h3.head(h2.size()) = h2;
    Eigen::VectorXd row = Eigen::VectorXd::Zero(p);
    row(i) = 1.0;
    g3.row(g2.rows()) = row.transpose();
    h3(h2.size()) = x(i) + 1e-10 * (1.0 + std::abs(x(i)));
    g2.swap(g3);
    h2.swap(h3);
  }
  base.lp.x = x;
  return base.lp;
}

}  // namespace arvex::detail
