#include "arvex/complexify.hpp"

#include <cmath>

namespace arvex {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

MatrixTuple double_up(const MatrixTuple& src) {
  // [[S, -T],[T, S]] from S + iT, entrywise over the tuple.
  const Eigen::Index n = src.rows;
  MatrixTuple out = MatrixTuple::zero(Field::Real, src.g(), 2 * n, 2 * n);
  for (int j = 0; j < src.g(); ++j) {
    const RealMatrix s = src[j].real();
    const RealMatrix t = src[j].imag();
    RealMatrix z(2 * n, 2 * n);
    z.topLeftCorner(n, n) = s;
    z.topRightCorner(n, n) = -t;
    z.bottomLeftCorner(n, n) = t;
    z.bottomRightCorner(n, n) = s;
    out[j] = z.cast<Scalar>();
  }
  return out;
}

}  // namespace

Realification realify_tuple(const MatrixTuple& x, const ToleranceConfig& cfg) {
  require(x.square(), "realification needs a square tuple");
  require(x.is_self_adjoint(std::max(cfg.sym, 1e-8)), "realification needs a self-adjoint tuple");
  const Eigen::Index n = x.rows;

  Realification out;
  out.s = MatrixTuple::zero(Field::Real, x.g(), n, n);
  out.t = MatrixTuple::zero(Field::Real, x.g(), n, n);
  for (int j = 0; j < x.g(); ++j) {
    out.s[j] = x[j].real().cast<Scalar>();
    out.t[j] = x[j].imag().cast<Scalar>();
  }
  out.z = double_up(x);

  out.v = Matrix::Zero(2 * n, n);
  const double inv = 1.0 / std::sqrt(2.0);
  out.v.topRows(n) = inv * Matrix::Identity(n, n);
  out.v.bottomRows(n) = Scalar(0.0, -inv) * Matrix::Identity(n, n);

  const MatrixTuple back = conjugate_by(out.z, out.v);
  double resid = 0.0;
  for (int j = 0; j < x.g(); ++j) resid = std::max(resid, (back[j] - x[j]).norm());
  if (resid > 1e-10 * std::max(1.0, x.norm()))
    throw InternalError("realification failed to reproduce the tuple under compression");
  return out;
}

RealifiedPencil realify_pencil(const Pencil& a, const ToleranceConfig& cfg) {
  RealifiedPencil out;
  double imag_norm = 0.0;
  for (const auto& m : a.a.entries) imag_norm = std::max(imag_norm, m.imag().norm());
  out.intersection_only = imag_norm > cfg.sym * std::max(1.0, a.a.norm());
  out.b = Pencil(double_up(a.a), cfg.sym);
  return out;
}

ExtremeDecomposition complex_decompose(const Pencil& p, const MatrixTuple& x,
                                       const ToleranceConfig& cfg, CounterRng& rng) {
  require(p.a.field == Field::Real, "the complex pipeline needs a real pencil");
  MembershipReport rep = is_member(p, x, cfg);
  require(rep.member, "input is not a member of the spectrahedron");
  const Eigen::Index n = x.rows;

  Realification real = realify_tuple(x, cfg);
  MembershipReport zrep = is_member(p, real.z, cfg);
  if (!zrep.member)
    throw InternalError("realified member left the spectrahedron; conjugation closure violated");

  ExtremeDecomposition dec;
  dec.input = x;
  dec.trace = arveson_dilation(p, real.z, cfg, rng);
  const MatrixTuple& ztil = dec.trace.y_out;

  Matrix vtil = Matrix::Zero(ztil.rows, n);
  vtil.topRows(2 * n) = real.v;

  MatrixTuple ztil_c = ztil;
  ztil_c.field = Field::Complex;
  for (const auto& piece : split_irreducible(ztil_c, Field::Complex, cfg)) {
    dec.components.push_back(piece.component);
    dec.isometries.push_back(piece.embed.adjoint() * vtil);
    dec.flags.push_back(absolute_extreme_certify(p, piece.component, cfg));
    dec.total_size += piece.component.rows;
  }
  dec.bound = 2 * n * (p.g() + 1);
  dec.equivalence_class = equivalence_classes(dec.components, 1e-6);
  return dec;
}

ExtremeDecomposition decompose(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg,
                               CounterRng& rng) {
  return x.field == Field::Real ? decompose_extreme(p, x, cfg, rng)
                                : complex_decompose(p, x, cfg, rng);
}

}  // namespace arvex
