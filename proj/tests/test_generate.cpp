#include <doctest.h>

#include <cmath>

#include "arvex/generate.hpp"
#include "arvex/io.hpp"
#include "helpers.hpp"

using namespace arvex;
using namespace arvex::testing;

namespace {
const ToleranceConfig cfg;
}

TEST_CASE("generation is reproducible from the seed") {
  CounterRng a(77), b(77);
  Pencil pa = generate_pencil(3, 2, a);
  Pencil pb = generate_pencil(3, 2, b);
  CHECK(pencil_to_json(pa) == pencil_to_json(pb));
  MatrixTuple xa = generate_member(pa, 2, Field::Real, a, cfg);
  MatrixTuple xb = generate_member(pb, 2, Field::Real, b, cfg);
  CHECK(tuple_to_json(xa) == tuple_to_json(xb));

  CounterRng c(78);
  Pencil pc = generate_pencil(3, 2, c);
  CHECK(pencil_to_json(pa) != pencil_to_json(pc));
}

TEST_CASE("generated pencils are bounded with boxed coordinates") {
  CounterRng rng(81);
  for (int rep = 0; rep < 3; ++rep) {
    Pencil p = generate_pencil(2, 2, rng);
    CHECK(p.d() == 2 + 2 * 2);
    CHECK(is_bounded(p, cfg));
    CHECK(level1_radius(p, cfg) <= generated_cube_halfwidth() + 1e-6);
  }
}

TEST_CASE("members sit at the requested depth") {
  // scaling a direction to a fraction f of its boundary supremum leaves
  // min_eig(L(X)) = 1 - f exactly, since L(tH) = I + t*Lambda(H)
  CounterRng rng(83);
  for (double fraction : {0.9, 0.5, 1.0}) {
    Pencil p = generate_pencil(2, 1, rng);
    MatrixTuple x = generate_member_scaled(p, 2, Field::Real, fraction, rng, cfg);
    const double min_eig = is_member(p, x, cfg).min_eig;
    CHECK(min_eig == doctest::Approx(1.0 - fraction).epsilon(1e-9));
  }
}

TEST_CASE("complex members are genuinely complex and feasible") {
  CounterRng rng(87);
  Pencil p = generate_pencil(2, 2, rng);
  MatrixTuple x = generate_member(p, 2, Field::Complex, rng, cfg);
  CHECK(x.field == Field::Complex);
  double imag_norm = 0.0;
  for (const auto& m : x.entries) imag_norm = std::max(imag_norm, m.imag().norm());
  CHECK(imag_norm > 1e-6);
  CHECK(is_member(p, x, cfg).member);
}

TEST_CASE("degenerate generation requests are rejected") {
  CounterRng rng(91);
  CHECK_THROWS_AS(generate_pencil(0, 1, rng), InputError);
  Pencil p = generate_pencil(2, 1, rng);
  CHECK_THROWS_AS(generate_member_scaled(p, 2, Field::Real, 0.0, rng, cfg), InputError);
  CHECK_THROWS_AS(generate_member_scaled(p, 2, Field::Real, 1.5, rng, cfg), InputError);
}
