#pragma once

#include "arvex/rng.hpp"
#include "arvex/tuple.hpp"

namespace arvex {

/// Random bounded pencil: d x d symmetrized Gaussian blocks, with the
/// diagonal blocks of a cube pencil appended so every coordinate is boxed
/// (total size d + 2g). Always passes the level-1 boundedness test.
Pencil generate_pencil(int d, int g, CounterRng& rng);

/// Cube side used by generate_pencil.
double generated_cube_halfwidth();

/// Random strict member: a self-adjoint Gaussian direction H scaled to
/// 0.9 * sup{s : L(sH) >= 0}, the supremum located by bisection.
MatrixTuple generate_member(const Pencil& p, int n, Field field, CounterRng& rng,
                            const ToleranceConfig& cfg);

/// Same direction construction at an arbitrary fraction of the supremum;
/// fraction 1 lands on the boundary.
MatrixTuple generate_member_scaled(const Pencil& p, int n, Field field, double fraction,
                                   CounterRng& rng, const ToleranceConfig& cfg);

}  // namespace arvex
