#pragma once

#include "arvex/decomposition.hpp"
#include "arvex/tuple.hpp"

namespace arvex {

/// Real symmetric double-size picture of a complex self-adjoint tuple:
/// X = S + iT maps to Z = [[S, -T],[T, S]] and X = V* Z V for the isometry
/// V = (1/sqrt 2) [I; -iI].
struct Realification {
  MatrixTuple z;  // real symmetric 2n x 2n
  Matrix v;       // complex (2n) x n isometry
  MatrixTuple s;  // real part, symmetric
  MatrixTuple t;  // imaginary part, skew-symmetric
};

Realification realify_tuple(const MatrixTuple& x, const ToleranceConfig& cfg);

/// Real 2d pencil from a complex one via the same block form. When the
/// input is already real the result cuts out the same spectrahedron; for a
/// genuinely complex pencil it cuts out the intersection with the
/// conjugated spectrahedron, flagged intersection_only.
struct RealifiedPencil {
  Pencil b;
  bool intersection_only = false;
};

RealifiedPencil realify_pencil(const Pencil& a, const ToleranceConfig& cfg);

/// Decomposes a complex member of a real pencil: realify to a double-size
/// real member, dilate that to the Arveson boundary (still extreme over C
/// because the pencil is real), split into complex irreducibles and
/// compress back. Total component size is at most 2n(g+1).
ExtremeDecomposition complex_decompose(const Pencil& p, const MatrixTuple& x,
                                       const ToleranceConfig& cfg, CounterRng& rng);

/// Routes by the member's field: decompose_extreme for real tuples,
/// complex_decompose otherwise.
ExtremeDecomposition decompose(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg,
                               CounterRng& rng);

}  // namespace arvex
