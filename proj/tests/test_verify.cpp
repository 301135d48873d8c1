#include <doctest.h>

#include "arvex/verify.hpp"
#include "helpers.hpp"

using namespace arvex;
using namespace arvex::testing;

namespace {
const ToleranceConfig cfg;
}

TEST_CASE("freshly computed decompositions verify") {
  Pencil p = interval_pencil();
  CounterRng rng(601);
  ExtremeDecomposition dec = decompose_extreme(p, scalar_member(0.5), cfg, rng);
  VerifyReport rep = verify_decomposition(p, dec, cfg);
  CHECK(rep.ok);
  CHECK(rep.failures == 0);
  CHECK(rep.checks >= 6);
}

TEST_CASE("a zeroed isometry breaks the partition of identity") {
  Pencil p = interval_pencil();
  CounterRng rng(607);
  ExtremeDecomposition dec = decompose_extreme(p, scalar_member(0.5), cfg, rng);
  dec.isometries[0].setZero();
  VerifyReport rep = verify_decomposition(p, dec, cfg);
  CHECK_FALSE(rep.ok);
  CHECK(rep.lines.find("FAIL partition-of-identity") != std::string::npos);
}

TEST_CASE("a non-arveson component is detected") {
  Pencil p = interval_pencil();
  CounterRng rng(613);
  ExtremeDecomposition dec = decompose_extreme(p, scalar_member(0.5), cfg, rng);
  // swap a component for an interior scalar of the same size
  dec.components[0] = scalar_member(0.25);
  VerifyReport rep = verify_decomposition(p, dec, cfg);
  CHECK_FALSE(rep.ok);
  CHECK(rep.lines.find("arveson") != std::string::npos);
}

TEST_CASE("an infeasible component is detected") {
  Pencil p = interval_pencil();
  CounterRng rng(617);
  ExtremeDecomposition dec = decompose_extreme(p, scalar_member(0.5), cfg, rng);
  dec.components[0] = scalar_member(1.5);
  VerifyReport rep = verify_decomposition(p, dec, cfg);
  CHECK_FALSE(rep.ok);
  CHECK(rep.lines.find("membership") != std::string::npos);
}

TEST_CASE("a size bound violation is detected") {
  Pencil p = interval_pencil();
  CounterRng rng(619);
  ExtremeDecomposition dec = decompose_extreme(p, scalar_member(0.5), cfg, rng);
  dec.bound = 1;
  VerifyReport rep = verify_decomposition(p, dec, cfg);
  CHECK_FALSE(rep.ok);
  CHECK(rep.lines.find("size-bound") != std::string::npos);
}
