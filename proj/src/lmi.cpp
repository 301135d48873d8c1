#include "arvex/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "simplex.hpp"

namespace arvex {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

struct MinEig {
  double value = 0.0;
  Vector vec;        // eigenvector of the smallest eigenvalue
  Matrix low_vecs;   // eigenvectors of the lowest few eigenvalues
};

// The lowest eigenpair plus the next couple of eigenvectors: cutting along
// several bottom directions at once keeps the master problem from
// zigzagging on flat ridges.
MinEig min_eig_pair(const Matrix& m, int extra = 2) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  MinEig out;
  out.value = es.eigenvalues()(0);
  out.vec = es.eigenvectors().col(0);
  const Eigen::Index take = std::min<Eigen::Index>(1 + extra, m.rows());
  out.low_vecs = es.eigenvectors().leftCols(take);
  return out;
}

// Valid linear inequality for the feasible set derived from a direction u:
// u*F0u + sum_i y_i u*F_i u >= 0, stored as row coefficients for G y <= h.
void append_cut(const LmiProblem& prob, const Vector& u, RealMatrix& g, RealVector& h,
                int extra_cols = 0) {
  const int k = prob.k();
  RealMatrix g2(g.rows() + 1, k + extra_cols);
  RealVector h2(h.size() + 1);
  if (g.rows() > 0) g2.topRows(g.rows()) = g;
  if (h.size() > 0) h2.head(h.size()) = h;
  RealVector row = RealVector::Zero(k + extra_cols);
  for (int i = 0; i < k; ++i) row(i) = -std::real(u.dot(prob.fs[static_cast<size_t>(i)] * u));
  if (extra_cols > 0) row(k) = 1.0;  // epigraph variable t <= u*F(y)u
  g2.row(g.rows()) = row.transpose();
  h2(h.size()) = std::real(u.dot(prob.f0 * u));
  g.swap(g2);
  h.swap(h2);
}

void append_cuts(const LmiProblem& prob, const Matrix& us, RealMatrix& g, RealVector& h,
                 int extra_cols = 0) {
  for (Eigen::Index c = 0; c < us.cols(); ++c) append_cut(prob, us.col(c), g, h, extra_cols);
}

// Bounds the master problem size: keeps the most recent cuts and the ones
// tightest at the reference point. Dropping valid cuts only relaxes the
// master, so its optimum stays a valid upper bound.
void drop_slack_cuts(RealMatrix& g, RealVector& h, const RealVector& ref, Eigen::Index cap) {
  if (g.rows() <= cap) return;
  const Eigen::Index keep_recent = 12;
  RealVector slack = h - g * ref;
  std::vector<Eigen::Index> order(static_cast<size_t>(g.rows()));
  for (Eigen::Index i = 0; i < g.rows(); ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const bool ra = a >= g.rows() - keep_recent;
    const bool rb = b >= g.rows() - keep_recent;
    if (ra != rb) return ra;
    return slack(a) < slack(b);
  });
  order.resize(static_cast<size_t>(cap));
  std::sort(order.begin(), order.end());
  RealMatrix g2(cap, g.cols());
  RealVector h2(cap);
  for (Eigen::Index i = 0; i < cap; ++i) {
    g2.row(i) = g.row(order[static_cast<size_t>(i)]);
    h2(i) = h(order[static_cast<size_t>(i)]);
  }
  g.swap(g2);
  h.swap(h2);
}

void log_iter(const ToleranceConfig& cfg, const char* tag, int iter, double min_eig, double obj) {
  if (cfg.verbosity >= 2)
    std::clog << tag << " iter=" << iter << " min_eig=" << min_eig << " objective=" << obj << "\n";
}

}  // namespace

Matrix LmiProblem::at(const RealVector& y) const {
  Matrix out = f0;
  for (int i = 0; i < k(); ++i) out += y(i) * fs[static_cast<size_t>(i)];
  return out;
}

double LmiProblem::min_eig_at(const RealVector& y) const { return min_eigenvalue(at(y)); }

const char* to_string(LmiStatus s) {
  switch (s) {
    case LmiStatus::Optimal: return "optimal";
    case LmiStatus::Stationary: return "stationary";
    case LmiStatus::Infeasible: return "infeasible";
    case LmiStatus::MaxIter: return "max_iter";
  }
  return "unknown";
}

SolverResult max_linear(const LmiProblem& prob, const RealVector& c, const ToleranceConfig& cfg,
                        std::optional<double> feas_level) {
  require(prob.k() >= 1 && c.size() == prob.k(), "objective length must match variable count");
  const double level = feas_level.value_or(-cfg.psd);
  const int k = prob.k();
  RealVector lb = RealVector::Constant(k, -prob.radius);
  RealVector ub = RealVector::Constant(k, prob.radius);
  RealMatrix g(0, k);
  RealVector h(0);

  SolverResult res;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    detail::LpResult lp = detail::solve_lp(g, h, c, lb, ub);
    if (lp.status == detail::LpStatus::Infeasible) {
      res.status = LmiStatus::Infeasible;
      res.iterations = iter;
      return res;
    }
    if (lp.status == detail::LpStatus::Unbounded)
      throw SolverError("cutting-plane master problem unbounded despite box");
    MinEig me = min_eig_pair(prob.at(lp.x));
    log_iter(cfg, "max_linear", iter, me.value, lp.objective);
    res.y = lp.x;
    res.objective = lp.objective;
    res.min_eig = me.value;
    res.iterations = iter + 1;
    if (me.value >= level) {
      // Feasible argmax of an outer relaxation is optimal.
      res.status = LmiStatus::Optimal;
      return res;
    }
    append_cuts(prob, me.low_vecs, g, h);
    RealVector ref(k);
    ref = lp.x;
    drop_slack_cuts(g, h, ref, 150);
  }
  res.status = LmiStatus::MaxIter;
  return res;
}

SolverResult max_min_eig(const LmiProblem& prob, const ToleranceConfig& cfg,
                         std::optional<double> stop_above, std::optional<double> stop_below) {
  require(prob.k() >= 1, "problem needs at least one variable");
  const int k = prob.k();
  // Variables (y, t), maximizing the epigraph variable t.
  double tbound = prob.f0.norm();
  for (const auto& f : prob.fs) tbound += prob.radius * f.norm();
  tbound += 1.0;
  RealVector lb(k + 1), ub(k + 1);
  lb.head(k).setConstant(-prob.radius);
  ub.head(k).setConstant(prob.radius);
  lb(k) = -tbound;
  ub(k) = tbound;
  RealVector c = RealVector::Zero(k + 1);
  c(k) = 1.0;

  RealMatrix g(0, k + 1);
  RealVector h(0);
  {
    MinEig seed = min_eig_pair(prob.f0);  // cuts at y = 0 bound t from above
    append_cuts(prob, seed.low_vecs, g, h, 1);
  }

  SolverResult best;
  best.status = LmiStatus::MaxIter;
  best.min_eig = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    // Canonical-vertex tie-breaking is pointless for the epigraph master
    // and destabilizes it at degenerate vertices.
    detail::LpResult lp = detail::solve_lp(g, h, c, lb, ub, false);
    if (lp.status != detail::LpStatus::Optimal)
      throw SolverError("epigraph master problem failed");
    const double upper = lp.objective;
    RealVector y = lp.x.head(k);
    MinEig me = min_eig_pair(prob.at(y));
    log_iter(cfg, "max_min_eig", iter, me.value, upper);
    if (me.value > best.min_eig) {
      best.y = y;
      best.min_eig = me.value;
      best.objective = me.value;
    }
    best.iterations = iter + 1;
    if (stop_above && best.min_eig >= *stop_above) {
      best.status = LmiStatus::Optimal;
      return best;
    }
    if (stop_below && upper < *stop_below) {
      best.status = LmiStatus::Infeasible;
      best.objective = upper;
      return best;
    }
    // With stop levels the caller needs the yes/no answer resolved to the
    // level itself, so the gap test may only fire at machine-noise margins.
    const double gap_tol =
        (stop_above || stop_below) ? 1e-13 * (1.0 + std::abs(upper)) : cfg.opt * (1.0 + std::abs(upper));
    if (upper - best.min_eig <= gap_tol) {
      best.status = LmiStatus::Optimal;
      return best;
    }
    append_cuts(prob, me.low_vecs, g, h, 1);
    drop_slack_cuts(g, h, lp.x, 150);
  }
  return best;
}

SolverResult local_norm_max(const LmiProblem& prob, const RealVector& start,
                            const ToleranceConfig& cfg, CounterRng& rng, bool randomize_first,
                            std::optional<double> feas_level) {
  require(start.size() == prob.k(), "start length must match variable count");
  const double level = feas_level.value_or(-cfg.psd);
  const double start_eig = prob.min_eig_at(start);
  require(start_eig >= level - 10.0 * cfg.psd, "local norm maximization needs a feasible start");

  SolverResult best;
  best.y = start;
  best.objective = start.norm();
  best.min_eig = start_eig;
  best.status = LmiStatus::MaxIter;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    RealVector dir;
    if ((iter == 0 && randomize_first) || best.y.norm() <= cfg.opt) {
      dir = RealVector::NullaryExpr(prob.k(), [&](Eigen::Index) { return rng.gaussian(); });
      if (dir.norm() == 0.0) dir = RealVector::Ones(prob.k());
      dir.normalize();
    } else {
      dir = best.y / best.y.norm();
    }
    SolverResult step = max_linear(prob, dir, cfg, level);
    if (step.status != LmiStatus::Optimal) {
      best.iterations = iter + 1;
      return best;  // keep the best feasible iterate
    }
    const double norm_new = step.y.norm();
    log_iter(cfg, "local_norm_max", iter, step.min_eig, norm_new);
    if (norm_new <= best.objective + cfg.opt) {
      if (norm_new > best.objective) {
        best.y = step.y;
        best.objective = norm_new;
        best.min_eig = step.min_eig;
      }
      best.status = LmiStatus::Stationary;
      best.iterations = iter + 1;
      return best;
    }
    best.y = step.y;
    best.objective = norm_new;
    best.min_eig = step.min_eig;
  }
  best.iterations = cfg.max_iter;
  return best;
}

}  // namespace arvex
