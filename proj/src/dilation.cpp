#include "arvex/dilation.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <iostream>
#include <sstream>

namespace arvex {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

struct Kernel {
  Matrix basis;     // orthonormal columns
  double max_eig = 0.0;
};

// Eigenvectors of a PSD self-adjoint matrix with eigenvalue below the
// relative kernel threshold. Warns when the spectral gap at the cut is thin,
// since rank misjudgment is the dominant failure mode.
Kernel kernel_of(const Matrix& l, const ToleranceConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(l);
  const RealVector vals = es.eigenvalues();
  Kernel out;
  out.max_eig = vals.size() ? vals(vals.size() - 1) : 0.0;
  const double thresh = cfg.kernel * std::max(1.0, out.max_eig);
  Eigen::Index k = 0;
  while (k < vals.size() && vals(k) <= thresh) ++k;
  if (k > 0 && k < vals.size() && cfg.verbosity >= 1) {
    const double below = std::max(std::abs(vals(k - 1)), 1e-300);
    if (vals(k) / below < 100.0)
      std::clog << "warning: thin spectral gap at kernel cut (ratio " << vals(k) / below << ")\n";
  }
  out.basis = es.eigenvectors().leftCols(k);
  return out;
}

// t_j = A_j * Vhat where Vhat is the kernel vector v reshaped d x n; the
// homogeneous evaluation on a column tuple acts on v through these blocks.
std::vector<Matrix> kron_action(const Pencil& p, const Vector& v, Eigen::Index n) {
  const Eigen::Index d = p.d();
  Matrix vhat(d, n);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index i = 0; i < n; ++i) vhat(b, i) = v(b * n + i);
  std::vector<Matrix> ts;
  ts.reserve(static_cast<size_t>(p.g()));
  for (int j = 0; j < p.g(); ++j) ts.push_back(p.a[j] * vhat);
  return ts;
}

MatrixTuple column_tuple_from_vector(const Vector& z, Field field, int g, Eigen::Index n) {
  MatrixTuple out = MatrixTuple::zero(field, g, n, 1);
  for (int j = 0; j < g; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out[j](i, 0) = z(j * n + i);
  enforce_field(out);
  return out;
}

// First coordinate of visible magnitude becomes real and positive.
Vector fix_phase(const Vector& z) {
  const double top = z.cwiseAbs().maxCoeff();
  if (top == 0.0) return z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > 1e-10 * top) {
      const Scalar phase = std::conj(z(i)) / std::abs(z(i));
      return phase * z;
    }
  }
  return z;
}

std::vector<MatrixTuple> standard_column_basis(Field field, int g, Eigen::Index n) {
  std::vector<MatrixTuple> basis;
  basis.reserve(static_cast<size_t>(g * n));
  for (int j = 0; j < g; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      MatrixTuple b = MatrixTuple::zero(field, g, n, 1);
      b[j](i, 0) = 1.0;
      basis.push_back(std::move(b));
    }
  }
  return basis;
}

double tuple_op_bound(const MatrixTuple& t) {
  double s = 0.0;
  for (const auto& m : t.entries) s += m.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

DilationSubspace dilation_subspace(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg) {
  MembershipReport rep = is_member(p, x, cfg);
  require(rep.member, "dilation subspace is defined for members only");
  const Eigen::Index n = x.rows;
  const int g = p.g();
  const Eigen::Index d = p.d();

  Kernel ker = kernel_of(eval_monic(p, x), cfg);
  DilationSubspace out;
  out.kernel_basis = ker.basis;
  const Eigen::Index nker = ker.basis.cols();

  if (nker == 0) {
    // Vacuous containment: every column tuple dilates.
    out.basis = standard_column_basis(x.field, g, n);
    out.dim = static_cast<int>(g * n);
    return out;
  }

  const bool complex_field = x.field == Field::Complex;
  const Eigen::Index params = complex_field ? 2 * g * n : g * n;
  RealMatrix constraints(nker * d * (complex_field ? 2 : 1), params);
  for (Eigen::Index kv = 0; kv < nker; ++kv) {
    const std::vector<Matrix> ts = kron_action(p, ker.basis.col(kv), n);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (int j = 0; j < g; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const Scalar t = ts[static_cast<size_t>(j)](a, i);
          const Eigen::Index col = j * n + i;
          if (!complex_field) {
            constraints(kv * d + a, col) = std::real(t);
          } else {
            // beta = x + iy enters conjugated: rows are the real and
            // imaginary parts of sum conj(beta) .* t.
            const Eigen::Index re_row = 2 * (kv * d + a);
            constraints(re_row, col) = std::real(t);
            constraints(re_row, g * n + col) = std::imag(t);
            constraints(re_row + 1, col) = std::imag(t);
            constraints(re_row + 1, g * n + col) = -std::real(t);
          }
        }
      }
    }
  }

  Eigen::JacobiSVD<RealMatrix> svd(constraints, Eigen::ComputeFullV);
  const RealVector sing = svd.singularValues();
  const double smax = sing.size() ? sing(0) : 0.0;
  const double thresh = cfg.kernel * std::max(1.0, smax);
  Eigen::Index rank = 0;
  while (rank < sing.size() && sing(rank) > thresh) ++rank;
  const Eigen::Index null_dim = params - rank;

  if (!complex_field) {
    for (Eigen::Index c = rank; c < params; ++c) {
      Vector z = svd.matrixV().col(c).cast<Scalar>();
      out.basis.push_back(column_tuple_from_vector(fix_phase(z), x.field, g, n));
    }
    out.dim = static_cast<int>(null_dim);
    return out;
  }

  if (null_dim == 0) {
    out.dim = 0;
    return out;
  }
  if (null_dim % 2 != 0 && cfg.verbosity >= 1)
    std::clog << "warning: odd real null dimension over the complex field\n";
  // The real-parameter null space is stable under multiplication by i, so
  // its complex span has half the dimension; extract an orthonormal complex
  // basis by a complex SVD of the stacked columns.
  Matrix stacked(g * n, null_dim);
  for (Eigen::Index c = 0; c < null_dim; ++c) {
    const RealVector w = svd.matrixV().col(rank + c);
    for (Eigen::Index q = 0; q < g * n; ++q) stacked(q, c) = Scalar(w(q), w(g * n + q));
  }
  Eigen::JacobiSVD<Matrix> csvd(stacked, Eigen::ComputeFullU);
  const RealVector cs = csvd.singularValues();
  const double csmax = cs.size() ? cs(0) : 0.0;
  Eigen::Index crank = 0;
  while (crank < cs.size() && cs(crank) > cfg.kernel * std::max(1.0, csmax)) ++crank;
  if (crank != null_dim / 2 && cfg.verbosity >= 1)
    std::clog << "warning: complex rank " << crank << " != half of real null dimension "
              << null_dim << "\n";
  for (Eigen::Index c = 0; c < crank; ++c)
    out.basis.push_back(column_tuple_from_vector(fix_phase(csvd.matrixU().col(c)), x.field, g, n));
  out.dim = static_cast<int>(crank);
  return out;
}

bool is_arveson(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg) {
  return dilation_subspace(p, x, cfg).dim == 0;
}

double feasibility_scale(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta,
                         const ToleranceConfig& cfg) {
  require(beta.cols == 1 && beta.rows == x.rows && beta.g() == p.g(),
          "direction must be a column tuple matching the member");
  const Matrix l = eval_monic(p, x);
  Kernel ker = kernel_of(l, cfg);
  const Matrix lam = eval_homogeneous(p, beta);  // dn x d
  const double scale = cfg.kernel * (1.0 + tuple_op_bound(p.a) * beta.norm());
  for (Eigen::Index kv = 0; kv < ker.basis.cols(); ++kv) {
    const double resid = (lam.adjoint() * ker.basis.col(kv)).norm();
    require(resid <= scale, "direction is outside the dilation subspace");
  }

  const RealVector vals = self_adjoint_eigenvalues(l);
  const double kthresh = cfg.kernel * std::max(1.0, ker.max_eig);
  double pos_min = -1.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > kthresh) {
      pos_min = vals(i);
      break;
    }
  }
  if (pos_min <= 0.0) throw SolverError("pencil evaluation has no positive part");
  Eigen::JacobiSVD<Matrix> svd(lam);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  require(smax > 1e-14, "homogeneous evaluation of the direction vanishes");
  return std::sqrt(pos_min) / smax;
}

MatrixTuple assemble_one_dilation(const MatrixTuple& x, const MatrixTuple& beta_hat, double c,
                                  const RealVector& gamma) {
  require(gamma.size() == x.g(), "corner must have one coordinate per tuple entry");
  MatrixTuple scaled = beta_hat;
  for (auto& m : scaled.entries) m *= c;
  MatrixTuple corner = MatrixTuple::zero(x.field, x.g(), 1, 1);
  for (int j = 0; j < x.g(); ++j) corner[j](0, 0) = gamma(j);
  return block2(x, scaled, corner);
}

namespace {

// Shuffled evaluation of the one-row dilation as an LMI in gamma:
// [[L(X), a*Lam(b)],[a*Lam(b)*, L(gamma)]] = F0(a) + sum gamma_i F_i.
LmiProblem gamma_problem(const Pencil& p, const Matrix& lx, const Matrix& lam, double alpha,
                         double radius) {
  const Eigen::Index dn = lx.rows();
  const Eigen::Index d = lam.cols();
  LmiProblem prob;
  prob.f0 = Matrix::Zero(dn + d, dn + d);
  prob.f0.topLeftCorner(dn, dn) = lx;
  prob.f0.topRightCorner(dn, d) = alpha * lam;
  prob.f0.bottomLeftCorner(d, dn) = alpha * lam.adjoint();
  prob.f0.bottomRightCorner(d, d) = Matrix::Identity(d, d);
  for (const auto& a : p.a.entries) {
    Matrix f = Matrix::Zero(dn + d, dn + d);
    f.bottomRightCorner(d, d) = a;
    prob.fs.push_back(std::move(f));
  }
  prob.radius = radius;
  return prob;
}

struct Probe {
  bool feasible = false;
  RealVector witness;
};

Probe probe_alpha(const Pencil& p, const Matrix& lx, const Matrix& lam, double alpha, double radius,
                  double level, const ToleranceConfig& cfg) {
  LmiProblem prob = gamma_problem(p, lx, lam, alpha, radius);
  SolverResult r = max_min_eig(prob, cfg, level, level);
  Probe out;
  out.feasible = r.min_eig >= level;
  out.witness = r.y;
  return out;
}

// Feasibility level for one step. The membership slack already carried by
// the current point cannot be improved by any dilation, so the step accepts
// eigenvalues down to that level minus an allowance; dividing the remaining
// psd budget by the remaining step count keeps the total inside the psd
// tolerance across a whole dilation run.
double step_level(const Matrix& lx, int dim, const ToleranceConfig& cfg) {
  const double slack = std::max(0.0, -min_eigenvalue(lx));
  const double budget = std::max(0.9 * cfg.psd - slack, 0.0);
  const double allowance = std::max(budget / (dim + 1), 1e-12);
  return -(slack + allowance);
}

DilationStep one_dilation_impl(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta_hat,
                               const ToleranceConfig& cfg, CounterRng& rng, double radius,
                               int dim_before, DilationSubspace* next) {
  const double c0 = feasibility_scale(p, x, beta_hat, cfg);
  const Matrix lx = eval_monic(p, x);
  const Matrix lam = eval_homogeneous(p, beta_hat);
  const double level = step_level(lx, dim_before, cfg);

  double lo = c0;
  Probe lo_probe = probe_alpha(p, lx, lam, lo, radius, level, cfg);
  int shrink = 0;
  while (!lo_probe.feasible && shrink < 8) {
    lo *= 0.5;
    lo_probe = probe_alpha(p, lx, lam, lo, radius, level, cfg);
    ++shrink;
  }
  if (!lo_probe.feasible) throw SolverError("corner-zero dilation scale is not feasible");

  double hi = std::max(2.0 * lo, 1.0);
  Probe hi_probe = probe_alpha(p, lx, lam, hi, radius, level, cfg);
  int doublings = 0;
  while (hi_probe.feasible) {
    lo = hi;
    lo_probe = hi_probe;
    hi *= 2.0;
    if (++doublings > 60)
      throw SolverError("dilation scale unbounded; spectrahedron not compact");
    hi_probe = probe_alpha(p, lx, lam, hi, radius, level, cfg);
  }
  while (hi - lo > cfg.opt * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    Probe mid_probe = probe_alpha(p, lx, lam, mid, radius, level, cfg);
    if (mid_probe.feasible) {
      lo = mid;
      lo_probe = mid_probe;
    } else {
      hi = mid;
    }
  }

  const double c = lo;
  LmiProblem at_c = gamma_problem(p, lx, lam, c, radius);

  DilationStep step;
  step.beta_hat = beta_hat;
  step.c = c;
  step.dim_before = dim_before;
  for (int attempt = 0; attempt < 6; ++attempt) {
    SolverResult corner = local_norm_max(at_c, lo_probe.witness, cfg, rng, attempt > 0, level);
    step.gamma_hat = corner.y;
    step.y_next = assemble_one_dilation(x, beta_hat, c, corner.y);
    DilationSubspace sub = dilation_subspace(p, step.y_next, cfg);
    step.dim_after = sub.dim;
    if (step.dim_after < dim_before) {
      if (cfg.verbosity >= 1)
        std::clog << "dilation step: c=" << c << " dim " << dim_before << " -> " << sub.dim << "\n";
      if (next) *next = std::move(sub);
      return step;
    }
    if (cfg.verbosity >= 1)
      std::clog << "retrying corner maximization; dimension " << dim_before << " -> "
                << step.dim_after << "\n";
  }
  std::ostringstream msg;
  msg << "maximal one-dilation failed to reduce the subspace dimension (" << dim_before << " -> "
      << step.dim_after << " at c=" << step.c << ")";
  throw SolverError(msg.str());
}

}  // namespace

DilationStep maximal_one_dilation(const Pencil& p, const MatrixTuple& x, const MatrixTuple& beta_hat,
                                  const ToleranceConfig& cfg, CounterRng& rng, double level_radius) {
  if (level_radius <= 0.0) level_radius = level1_radius(p, cfg) * 1.01 + 0.1;
  DilationSubspace sub = dilation_subspace(p, x, cfg);
  require(sub.dim > 0, "member is already Arveson extreme");
  return one_dilation_impl(p, x, beta_hat, cfg, rng, level_radius, sub.dim, nullptr);
}

DilationTrace arveson_dilation(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg,
                               CounterRng& rng) {
  MembershipReport rep = is_member(p, x, cfg);
  require(rep.member, "input is not a member of the spectrahedron");
  if (!is_bounded(p, cfg))
    throw InputError("pencil not certified bounded (level-1 criterion)");
  const double radius = level1_radius(p, cfg) * 1.01 + 0.1;

  DilationTrace trace;
  trace.x_in = x;
  trace.y_out = x;
  DilationSubspace sub = dilation_subspace(p, x, cfg);
  const int initial_dim = sub.dim;
  while (sub.dim > 0) {
    if (static_cast<int>(trace.steps.size()) >= initial_dim)
      throw InternalError("dilation step count exceeded the initial subspace dimension");
    // Any nonzero subspace direction works in principle; rotate through the
    // basis (and random unit combinations) when one direction's geometry is
    // too degenerate to certify the dimension drop.
    DilationSubspace next;
    DilationStep step;
    bool done = false;
    std::string last_err;
    const int basis_tries = std::min<int>(sub.dim, 3);
    for (int attempt = 0; attempt < basis_tries + 2 && !done; ++attempt) {
      MatrixTuple beta;
      if (attempt < basis_tries) {
        beta = sub.basis[static_cast<size_t>(attempt)];
      } else {
        beta = MatrixTuple::zero(sub.basis.front().field, p.g(), trace.y_out.rows, 1);
        for (const auto& b : sub.basis) {
          const double w = rng.gaussian();
          for (int j = 0; j < p.g(); ++j) beta[j] += w * b[j];
        }
        const double nrm = beta.norm();
        if (nrm < 1e-12) continue;
        for (auto& m : beta.entries) m /= nrm;
      }
      try {
        step = one_dilation_impl(p, trace.y_out, beta, cfg, rng, radius, sub.dim, &next);
        done = true;
      } catch (const SolverError& e) {
        last_err = e.what();
        if (cfg.verbosity >= 1)
          std::clog << "retrying dilation step along another direction: " << last_err << "\n";
      }
    }
    if (!done) throw SolverError(last_err);
    trace.y_out = step.y_next;
    trace.steps.push_back(std::move(step));
    sub = std::move(next);
  }
  return trace;
}

}  // namespace arvex
