#include "arvex/decomposition.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace arvex {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

// Orthonormal (Frobenius) basis of self-adjoint n x n matrices:
// diagonal units, then (E_rc + E_cr)/sqrt2, and over C also
// (iE_rc - iE_cr)/sqrt2.
std::vector<Matrix> self_adjoint_units(Eigen::Index n, Field field) {
  std::vector<Matrix> units;
  const double inv = 1.0 / std::sqrt(2.0);
  for (Eigen::Index r = 0; r < n; ++r) {
    Matrix e = Matrix::Zero(n, n);
    e(r, r) = 1.0;
    units.push_back(std::move(e));
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r + 1; c < n; ++c) {
      Matrix e = Matrix::Zero(n, n);
      e(r, c) = inv;
      e(c, r) = inv;
      units.push_back(std::move(e));
      if (field == Field::Complex) {
        Matrix f = Matrix::Zero(n, n);
        f(r, c) = Scalar(0.0, inv);
        f(c, r) = Scalar(0.0, -inv);
        units.push_back(std::move(f));
      }
    }
  }
  return units;
}

}  // namespace

CommutantBasis commutant(const MatrixTuple& x, Field field, const ToleranceConfig& cfg) {
  require(x.square(), "commutant needs a square tuple");
  require(x.is_self_adjoint(std::max(cfg.sym, 1e-8)), "commutant needs a self-adjoint tuple");
  const Eigen::Index n = x.rows;
  const std::vector<Matrix> units = self_adjoint_units(n, field);
  const Eigen::Index params = static_cast<Eigen::Index>(units.size());

  // Stack the real and imaginary parts of W X_j - X_j W over the basis.
  const Eigen::Index rows_per = 2 * n * n;
  RealMatrix m(static_cast<Eigen::Index>(x.g()) * rows_per, params);
  for (Eigen::Index k = 0; k < params; ++k) {
    for (int j = 0; j < x.g(); ++j) {
      const Matrix comm = units[static_cast<size_t>(k)] * x[j] - x[j] * units[static_cast<size_t>(k)];
      Eigen::Index base = j * rows_per;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          m(base + 2 * (r * n + c), k) = std::real(comm(r, c));
          m(base + 2 * (r * n + c) + 1, k) = std::imag(comm(r, c));
        }
      }
    }
  }

  const double xscale = std::max(1.0, x.norm());
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector sing = svd.singularValues();
  const double smax = sing.size() ? sing(0) : 0.0;
  const double thresh = cfg.kernel * std::max(xscale, smax);
  Eigen::Index rank = 0;
  while (rank < sing.size() && sing(rank) > thresh) ++rank;

  CommutantBasis out;
  for (Eigen::Index c = rank; c < params; ++c) {
    Matrix w = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < params; ++k)
      w += svd.matrixV()(k, c) * units[static_cast<size_t>(k)];
    out.basis.push_back(std::move(w));
  }
  out.dim = static_cast<int>(params - rank);
  return out;
}

bool is_irreducible(const MatrixTuple& x, Field field, const ToleranceConfig& cfg) {
  if (x.rows == 1) return true;
  return commutant(x, field, cfg).dim == 1;
}

namespace {

void split_recurse(const MatrixTuple& x, Field field, const ToleranceConfig& cfg,
                   const Matrix& embed_so_far, std::vector<SplitComponent>& out) {
  const Eigen::Index n = x.rows;
  if (n == 1) {
    out.push_back({x, embed_so_far});
    return;
  }
  CommutantBasis com = commutant(x, field, cfg);
  if (com.dim <= 1) {
    out.push_back({x, embed_so_far});
    return;
  }

  // Deterministic splitter: the commutant element farthest from scalar.
  Matrix splitter;
  double best = -1.0;
  for (const auto& w : com.basis) {
    const Scalar mean = w.trace() / static_cast<double>(n);
    const Matrix dev = w - mean * Matrix::Identity(n, n);
    const double d = dev.norm();
    if (d > best) {
      best = d;
      splitter = dev;
    }
  }
  if (best <= 10.0 * cfg.kernel) {
    out.push_back({x, embed_so_far});  // numerically scalar commutant
    return;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(splitter);
  const RealVector vals = es.eigenvalues();
  const double scale = vals.cwiseAbs().maxCoeff();
  const double gap = 10.0 * cfg.kernel * std::max(1.0, scale);

  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i < vals.size(); ++i) {
    if (vals(i) - vals(i - 1) > gap) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  clusters.emplace_back(begin, vals.size());
  if (clusters.size() < 2)
    throw SolverError("commutant splitter has no safely separated eigenvalue clusters");

  for (const auto& [b, e] : clusters) {
    const Matrix basis = es.eigenvectors().middleCols(b, e - b);
    MatrixTuple xc = conjugate_by(x, basis);
    // symmetrize away compression dust
    for (auto& mm : xc.entries) mm = 0.5 * (mm + mm.adjoint().eval());
    enforce_field(xc);
    split_recurse(xc, field, cfg, embed_so_far * basis, out);
  }
}

}  // namespace

std::vector<SplitComponent> split_irreducible(const MatrixTuple& x, Field field,
                                              const ToleranceConfig& cfg) {
  require(x.square(), "splitting needs a square tuple");
  std::vector<SplitComponent> out;
  split_recurse(x, field, cfg, Matrix::Identity(x.rows, x.rows), out);
  return out;
}

CertFlags absolute_extreme_certify(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg) {
  CertFlags flags;
  flags.conjugation_warning = p.a.field != Field::Real;
  flags.irreducible = is_irreducible(x, x.field, cfg);
  flags.arveson = is_arveson(p, x, cfg);
  flags.absolute_extreme = flags.irreducible && flags.arveson;
  return flags;
}

ExtremeDecomposition decompose_extreme(const Pencil& p, const MatrixTuple& x,
                                       const ToleranceConfig& cfg, CounterRng& rng) {
  require(p.a.field == Field::Real, "decompose_extreme needs a real pencil");
  require(x.field == Field::Real, "complex members go through the complexification pipeline");

  ExtremeDecomposition dec;
  dec.input = x;
  dec.trace = arveson_dilation(p, x, cfg, rng);
  const MatrixTuple& y = dec.trace.y_out;
  const Eigen::Index n = x.rows;

  Matrix v = Matrix::Zero(y.rows, n);
  v.topLeftCorner(n, n) = Matrix::Identity(n, n);

  for (const auto& piece : split_irreducible(y, Field::Real, cfg)) {
    dec.components.push_back(piece.component);
    dec.isometries.push_back(piece.embed.adjoint() * v);
    dec.flags.push_back(absolute_extreme_certify(p, piece.component, cfg));
    dec.total_size += piece.component.rows;
  }
  dec.bound = n * (p.g() + 1);
  dec.equivalence_class = equivalence_classes(dec.components, 1e-6);
  return dec;
}

ParameterReport parameter_report(int n, int g) {
  require(n >= 1 && g >= 1, "parameter counts need n, g >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t ug = static_cast<std::uint64_t>(g);
  ParameterReport rep;
  const std::uint64_t s = un * (un + 1) * ug / 2;
  rep.classical = (s + 1) * s;
  const std::uint64_t m = un + un * ug;
  rep.free_dim = 2 * m * (m + 1) * ug;
  return rep;
}

std::vector<Scalar> word_trace_signature(const MatrixTuple& x, int max_len) {
  std::vector<Scalar> sig;
  std::vector<Matrix> words = {Matrix::Identity(x.rows, x.rows)};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Matrix> next;
    next.reserve(words.size() * static_cast<size_t>(x.g()));
    for (const auto& w : words) {
      for (int j = 0; j < x.g(); ++j) {
        Matrix prod = w * x[j];
        sig.push_back(prod.trace());
        next.push_back(std::move(prod));
      }
    }
    words.swap(next);
  }
  return sig;
}

std::vector<int> equivalence_classes(const std::vector<MatrixTuple>& tuples, double tol) {
  std::vector<std::vector<Scalar>> sigs;
  sigs.reserve(tuples.size());
  for (const auto& t : tuples) sigs.push_back(word_trace_signature(t, 3));
  std::vector<int> cls(tuples.size(), -1);
  int next_class = 0;
  for (size_t i = 0; i < tuples.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next_class;
    for (size_t j = i + 1; j < tuples.size(); ++j) {
      if (cls[j] >= 0 || tuples[j].rows != tuples[i].rows) continue;
      double dist = 0.0;
      for (size_t k = 0; k < sigs[i].size(); ++k)
        dist = std::max(dist, std::abs(sigs[i][k] - sigs[j][k]));
      if (dist <= tol * (1.0 + std::max(tuples[i].norm(), tuples[j].norm()))) cls[j] = next_class;
    }
    ++next_class;
  }
  return cls;
}

}  // namespace arvex
