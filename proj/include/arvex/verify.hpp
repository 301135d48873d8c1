#pragma once

#include <string>

#include "arvex/decomposition.hpp"

namespace arvex {

/// Independent re-check of every decomposition invariant: partition of
/// identity, reconstruction of the input, per-component membership (via the
/// two-route Schur oracle), Arveson extremality, irreducibility, flag
/// consistency, and the size bound.
struct VerifyReport {
  bool ok = true;
  int checks = 0;
  int failures = 0;
  std::string lines;  // one "ok ..." / "FAIL ..." line per check
};

VerifyReport verify_decomposition(const Pencil& p, const ExtremeDecomposition& d,
                                  const ToleranceConfig& cfg);

}  // namespace arvex
