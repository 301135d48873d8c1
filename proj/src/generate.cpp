#include "arvex/generate.hpp"

#include <cmath>

namespace arvex {

namespace {

constexpr double kCubeHalfwidth = 2.0;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

Matrix gaussian_self_adjoint(int n, Field field, CounterRng& rng) {
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double re = rng.gaussian();
      const double im = field == Field::Complex ? rng.gaussian() : 0.0;
      g(r, c) = Scalar(re, im);
    }
  }
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace

double generated_cube_halfwidth() { return kCubeHalfwidth; }

Pencil generate_pencil(int d, int g, CounterRng& rng) {
  require(d >= 1 && g >= 1, "pencil generation needs d, g >= 1");
  std::vector<Matrix> entries;
  entries.reserve(static_cast<size_t>(g));
  std::vector<Matrix> random_blocks;
  for (int j = 0; j < g; ++j) random_blocks.push_back(gaussian_self_adjoint(d, Field::Real, rng));
  // Append the diagonal blocks of a cube pencil so every coordinate is
  // bounded: slots (2j, 2j+1) carry +-1/s for coordinate j.
  const double inv = 1.0 / kCubeHalfwidth;
  for (int j = 0; j < g; ++j) {
    Matrix a = Matrix::Zero(d + 2 * g, d + 2 * g);
    a.topLeftCorner(d, d) = random_blocks[static_cast<size_t>(j)];
    a(d + 2 * j, d + 2 * j) = inv;
    a(d + 2 * j + 1, d + 2 * j + 1) = -inv;
    entries.push_back(std::move(a));
  }
  return Pencil(MatrixTuple(Field::Real, std::move(entries)));
}

MatrixTuple generate_member_scaled(const Pencil& p, int n, Field field, double fraction,
                                   CounterRng& rng, const ToleranceConfig& cfg) {
  require(n >= 1, "member generation needs n >= 1");
  require(fraction > 0.0 && fraction <= 1.0, "fraction must lie in (0, 1]");
  std::vector<Matrix> dir;
  dir.reserve(static_cast<size_t>(p.g()));
  for (int j = 0; j < p.g(); ++j) dir.push_back(gaussian_self_adjoint(n, field, rng));
  MatrixTuple h(field, std::move(dir));
  require(h.norm() > 1e-12, "degenerate random direction");

  auto min_eig_at = [&](double s) {
    MatrixTuple scaled = h;
    for (auto& m : scaled.entries) m *= s;
    return min_eigenvalue(eval_monic(p, scaled));
  };

  // sup{s : L(sH) >= 0} by doubling then bisection; the cube blocks keep it
  // finite.
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (min_eig_at(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60) throw SolverError("random direction appears unbounded");
  }
  while (hi - lo > 1e-12 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (min_eig_at(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }

  const double t = fraction * lo;
  MatrixTuple x = h;
  for (auto& m : x.entries) m *= t;
  enforce_field(x);
  (void)cfg;
  return x;
}

MatrixTuple generate_member(const Pencil& p, int n, Field field, CounterRng& rng,
                            const ToleranceConfig& cfg) {
  return generate_member_scaled(p, n, field, 0.9, rng, cfg);
}

}  // namespace arvex
