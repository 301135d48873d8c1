#pragma once

#include <initializer_list>
#include <vector>

#include "arvex/generate.hpp"
#include "arvex/rng.hpp"
#include "arvex/tuple.hpp"

namespace arvex::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(nr, nc);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline Matrix cmat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(nr, nc);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (Scalar v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline MatrixTuple real_tuple(std::vector<Matrix> ms) {
  return MatrixTuple(Field::Real, std::move(ms));
}

inline MatrixTuple complex_tuple(std::vector<Matrix> ms) {
  return MatrixTuple(Field::Complex, std::move(ms));
}

/// One-variable pencil cutting out the interval [-1, 1].
inline Pencil interval_pencil() {
  return Pencil(real_tuple({mat({{1, 0}, {0, -1}})}));
}

inline MatrixTuple scalar_member(double v) { return real_tuple({mat({{v}})}); }

inline Matrix gaussian_matrix(CounterRng& rng, Eigen::Index r, Eigen::Index c,
                              Field field = Field::Real) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = Scalar(rng.gaussian(), field == Field::Complex ? rng.gaussian() : 0.0);
  return m;
}

inline MatrixTuple random_self_adjoint(CounterRng& rng, int g, Eigen::Index n,
                                       Field field = Field::Real) {
  std::vector<Matrix> ms;
  for (int j = 0; j < g; ++j) {
    Matrix m = gaussian_matrix(rng, n, n, field);
    ms.push_back(0.5 * (m + m.adjoint().eval()));
  }
  return MatrixTuple(field, std::move(ms));
}

/// Isometry with Haar-ish columns (QR of a Gaussian block).
inline Matrix random_isometry(CounterRng& rng, Eigen::Index m, Eigen::Index n,
                              Field field = Field::Real) {
  Matrix g = gaussian_matrix(rng, m, n, field);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(m, n);
  return q;
}

}  // namespace arvex::testing
