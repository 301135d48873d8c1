#include "arvex/tuple.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

#include "arvex/lmi.hpp"

namespace arvex {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

}  // namespace

MatrixTuple::MatrixTuple(Field f, std::vector<Matrix> ms) : field(f), entries(std::move(ms)) {
  require(!entries.empty(), "tuple needs at least one matrix");
  rows = entries.front().rows();
  cols = entries.front().cols();
  for (const auto& m : entries)
    require(m.rows() == rows && m.cols() == cols, "tuple matrices must share dimensions");
  enforce_field(*this);
}

double MatrixTuple::self_adjoint_defect() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  if (rows == 0) return 0.0;
  double worst = 0.0;
  for (const auto& m : entries)
    worst = std::max(worst, (m - m.adjoint().eval()).cwiseAbs().maxCoeff());
  return worst;
}

MatrixTuple MatrixTuple::adjoint() const {
  MatrixTuple out;
  out.field = field;
  out.rows = cols;
  out.cols = rows;
  out.entries.reserve(entries.size());
  for (const auto& m : entries) out.entries.push_back(m.adjoint());
  return out;
}

MatrixTuple MatrixTuple::conjugate() const {
  MatrixTuple out = *this;
  for (auto& m : out.entries) m = m.conjugate();
  return out;
}

double MatrixTuple::norm() const {
  double s = 0.0;
  for (const auto& m : entries) s += m.squaredNorm();
  return std::sqrt(s);
}

double MatrixTuple::distance(const MatrixTuple& other) const {
  require(g() == other.g() && rows == other.rows && cols == other.cols,
          "tuple shape mismatch in distance");
  double worst = 0.0;
  for (int j = 0; j < g(); ++j) worst = std::max(worst, (entries[j] - other.entries[j]).norm());
  return worst;
}

MatrixTuple MatrixTuple::zero(Field f, int g, Eigen::Index rows, Eigen::Index cols) {
  std::vector<Matrix> ms(static_cast<size_t>(g), Matrix::Zero(rows, cols));
  return MatrixTuple(f, std::move(ms));
}

MatrixTuple MatrixTuple::identity_like(Field f, int g, Eigen::Index n) {
  std::vector<Matrix> ms(static_cast<size_t>(g), Matrix::Identity(n, n));
  return MatrixTuple(f, std::move(ms));
}

void enforce_field(MatrixTuple& t) {
  if (t.field != Field::Real) return;
  for (auto& m : t.entries) m = m.real().cast<Scalar>();
}

Pencil::Pencil(MatrixTuple tuple, double sym_tol) : a(std::move(tuple)) {
  require(a.square(), "pencil tuple must be square");
  require(a.is_self_adjoint(sym_tol), "pencil tuple must be self-adjoint");
}

Matrix eval_monic(const Pencil& p, const MatrixTuple& x) {
  require(p.g() == x.g(), "pencil/tuple length mismatch");
  require(x.square(), "monic evaluation needs a square tuple");
  const Eigen::Index dim = p.d() * x.rows;
  Matrix out = Matrix::Identity(dim, dim);
  for (int j = 0; j < p.g(); ++j)
    out.noalias() += Eigen::kroneckerProduct(p.a[j], x[j]).eval();
  return out;
}

Matrix eval_homogeneous(const Pencil& p, const MatrixTuple& b) {
  require(p.g() == b.g(), "pencil/tuple length mismatch");
  Matrix out = Matrix::Zero(p.d() * b.rows, p.d() * b.cols);
  for (int j = 0; j < p.g(); ++j)
    out.noalias() += Eigen::kroneckerProduct(p.a[j], b[j]).eval();
  return out;
}

RealVector self_adjoint_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  return self_adjoint_eigenvalues(m).minCoeff();
}

MembershipReport is_member(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg) {
  require(x.is_self_adjoint(std::max(cfg.sym, 1e-8)), "membership needs a self-adjoint tuple");
  MembershipReport rep;
  rep.min_eig = min_eigenvalue(eval_monic(p, x));
  rep.member = rep.min_eig >= -cfg.psd;
  return rep;
}

namespace {

// Max of c^T x over the level-1 recession cone intersected with the unit
// box. The cone is scale invariant, so a nontrivial cone shows up as an
// O(1) optimum in some +-coordinate direction.
double cone_direction_max(const Pencil& p, const RealVector& c, const ToleranceConfig& cfg) {
  LmiProblem prob;
  const Eigen::Index d = p.d();
  prob.f0 = Matrix::Zero(d, d);
  prob.fs.reserve(p.g());
  for (int j = 0; j < p.g(); ++j) prob.fs.push_back(p.a[j]);
  prob.radius = 1.0;
  SolverResult r = max_linear(prob, c, cfg);
  if (r.status == LmiStatus::Infeasible)
    throw SolverError("recession cone probe reported an infeasible cone");
  return r.objective;
}

}  // namespace

bool is_bounded(const Pencil& p, const ToleranceConfig& cfg) {
  constexpr double kConeTol = 1e-6;
  for (int j = 0; j < p.g(); ++j) {
    RealVector c = RealVector::Zero(p.g());
    c(j) = 1.0;
    if (cone_direction_max(p, c, cfg) > kConeTol) return false;
    c(j) = -1.0;
    if (cone_direction_max(p, c, cfg) > kConeTol) return false;
  }
  return true;
}

double level1_radius(const Pencil& p, const ToleranceConfig& cfg) {
  // max +-x_i over {L(x) >= 0}; the box doubles until it stops binding.
  double radius = 0.0;
  for (int j = 0; j < p.g(); ++j) {
    for (double sign : {1.0, -1.0}) {
      RealVector c = RealVector::Zero(p.g());
      c(j) = sign;
      double box = 2.0;
      for (int attempt = 0; attempt < 40; ++attempt) {
        LmiProblem prob;
        prob.f0 = Matrix::Identity(p.d(), p.d());
        for (int i = 0; i < p.g(); ++i) prob.fs.push_back(p.a[i]);
        prob.radius = box;
        SolverResult r = max_linear(prob, c, cfg);
        if (r.status == LmiStatus::Infeasible)
          throw SolverError("level-1 spectrahedron appears empty");
        if (r.objective < box * (1.0 - 1e-6)) {
          radius = std::max(radius, std::abs(r.objective));
          break;
        }
        box *= 2.0;
        if (attempt == 39)
          throw SolverError("level-1 spectrahedron appears unbounded; pencil not compact");
      }
    }
  }
  return radius;
}

MatrixTuple compress(const MatrixTuple& y, const Matrix& v, const ToleranceConfig& cfg) {
  require(v.rows() == y.rows, "isometry row count must match tuple size");
  const Eigen::Index n = v.cols();
  const double defect = (v.adjoint() * v - Matrix::Identity(n, n)).norm();
  require(defect <= cfg.sym * std::sqrt(static_cast<double>(std::max<Eigen::Index>(n, 1))) * 10.0 + cfg.sym,
          "compression needs an isometry (V*V != I)");
  return conjugate_by(y, v);
}

MatrixTuple conjugate_by(const MatrixTuple& y, const Matrix& w) {
  MatrixTuple out;
  out.field = w.imag().isZero(0.0) && y.field == Field::Real ? Field::Real : Field::Complex;
  out.rows = w.cols();
  out.cols = w.cols();
  out.entries.reserve(y.entries.size());
  for (const auto& m : y.entries) out.entries.push_back(w.adjoint() * m * w);
  enforce_field(out);
  return out;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& z) {
  require(x.g() == z.g(), "direct sum needs equal tuple lengths");
  require(x.field == z.field, "direct sum needs matching fields");
  require(x.square() && z.square(), "direct sum is defined for square tuples");
  MatrixTuple out = MatrixTuple::zero(x.field, x.g(), x.rows + z.rows, x.cols + z.cols);
  for (int j = 0; j < x.g(); ++j) {
    out[j].topLeftCorner(x.rows, x.cols) = x[j];
    out[j].bottomRightCorner(z.rows, z.cols) = z[j];
  }
  return out;
}

MatrixTuple block2(const MatrixTuple& x, const MatrixTuple& b, const MatrixTuple& g) {
  require(x.g() == b.g() && x.g() == g.g(), "block tuple length mismatch");
  require(x.square() && g.square(), "diagonal blocks must be square");
  require(b.rows == x.rows && b.cols == g.rows, "off-diagonal block shape mismatch");
  const Field f =
      (x.field == Field::Real && b.field == Field::Real && g.field == Field::Real) ? Field::Real
                                                                                   : Field::Complex;
  MatrixTuple out = MatrixTuple::zero(f, x.g(), x.rows + g.rows, x.rows + g.rows);
  for (int j = 0; j < x.g(); ++j) {
    out[j].topLeftCorner(x.rows, x.rows) = x[j];
    out[j].topRightCorner(x.rows, g.rows) = b[j];
    out[j].bottomLeftCorner(g.rows, x.rows) = b[j].adjoint();
    out[j].bottomRightCorner(g.rows, g.rows) = g[j];
  }
  return out;
}

std::vector<Eigen::Index> shuffle_permutation(Eigen::Index d, const std::vector<Eigen::Index>& sizes) {
  Eigen::Index total = 0;
  for (auto s : sizes) total += s;
  std::vector<Eigen::Index> sigma(static_cast<size_t>(d * total));
  std::vector<Eigen::Index> offsets(sizes.size());
  Eigen::Index acc = 0;
  for (size_t b = 0; b < sizes.size(); ++b) {
    offsets[b] = acc;
    acc += d * sizes[b];
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index p = 0;
    for (size_t b = 0; b < sizes.size(); ++b) {
      for (Eigen::Index q = 0; q < sizes[b]; ++q, ++p)
        sigma[static_cast<size_t>(i * total + p)] = offsets[b] + i * sizes[b] + q;
    }
  }
  return sigma;
}

Matrix apply_shuffle(const Matrix& m, Eigen::Index d, const std::vector<Eigen::Index>& sizes) {
  const auto sigma = shuffle_permutation(d, sizes);
  require(static_cast<Eigen::Index>(sigma.size()) == m.rows() && m.rows() == m.cols(),
          "shuffle size mismatch");
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(sigma[static_cast<size_t>(r)], sigma[static_cast<size_t>(c)]) = m(r, c);
  return out;
}

Matrix shuffle_matrix(Eigen::Index d, const std::vector<Eigen::Index>& sizes) {
  const auto sigma = shuffle_permutation(d, sizes);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(sigma.size()),
                            static_cast<Eigen::Index>(sigma.size()));
  for (size_t r = 0; r < sigma.size(); ++r) out(sigma[r], static_cast<Eigen::Index>(r)) = 1.0;
  return out;
}

}  // namespace arvex
