/*
 * Copyright 2026 The skewflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "skewflow/error.hpp"
#include "skewflow/pfaffian.hpp"
#include "skewflow/sops.hpp"

using namespace skewflow;

TEST_CASE("skew product") {
  const SkewMoments m = oracle::symplectic_test_moments();
  CHECK(skew_product(m, Polynomial({1}), Polynomial({0, 1})) == 2);
  const Polynomial f({1, -2, 3});
  CHECK(skew_product(m, f, f) == 0);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial f1 = oracle::random_poly(rng, 4), f2 = oracle::random_poly(rng, 6);
    const Polynomial g = oracle::random_poly(rng, 5);
    CHECK(skew_product(m, f1 + f2, g) == skew_product(m, f1, g) + skew_product(m, f2, g));
  }
  CHECK_THROWS_AS(skew_product(m, Polynomial::monomial(13), f), Error);
}

TEST_CASE("SOPs of the symplectic test instance") {
  const SkewMoments m = oracle::symplectic_test_moments();
  CHECK(sop_even(m, 0) == Polynomial({1}));
  CHECK(sop_odd(m, 0) == Polynomial({0, 1}));
  CHECK(sop_even(m, 1) == Polynomial({Rational(5, 2), -3, 1}));
  CHECK(sop_odd(m, 1) == Polynomial({9, Rational(-15, 2), 0, 1}));
  CHECK(normalization(m, 0) == 2);
  CHECK(normalization(m, 1) == Rational(1, 2));
  CHECK(leading_pfaffian(m, 4) / leading_pfaffian(m, 2) == Rational(1, 2));

  const SOPFamily zero = build_family(m, 0);
  CHECK(zero.polys == std::vector<Polynomial>{Polynomial({1}), Polynomial({0, 1})});
  CHECK(zero.norms == std::vector<Rational>{2});

  const SOPFamily one = build_family(m, 1);
  const SOPFamily oracle_one = oracle_family(m, 1);
  CHECK(one.polys == oracle_one.polys);
  CHECK(oracle_family(m, 0).polys == zero.polys);
}

TEST_CASE("Pfaffian and linear-solve families agree") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const SkewMoments m = from_random(seed, 9, 10);
    const SOPFamily a = build_family(m, 4);
    const SOPFamily b = oracle_family(m, 4);
    CHECK(a.polys == b.polys);
    CHECK(a.norms == b.norms);
    for (std::size_t n = 0; n <= 4; ++n) {
      CHECK(a.even(n).leading() == 1);
      CHECK(a.odd(n).leading() == 1);
      CHECK(a.odd(n).coefficient(2 * n) == 0);
      if (n > 0) {
        CHECK(a.norms[n] == leading_pfaffian(m, 2 * n + 2) / leading_pfaffian(m, 2 * n));
      }
    }
    CHECK(verify_skew_orthogonality(a, m).passed());
  }
}

TEST_CASE("odd gauge freedom") {
  const SkewMoments m = from_random(3, 7, 10);
  SOPFamily f = build_family(m, 3);
  const Rational alpha(7, 5);
  f.polys[3] += f.polys[2] * alpha;
  CHECK(verify_skew_orthogonality(f, m).passed());
  CHECK(skew_product(m, f.even(1), f.odd(1)) == normalization(m, 1));
}

TEST_CASE("fault injection is detected") {
  const SkewMoments m = oracle::symplectic_test_moments();
  SOPFamily f = build_family(m, 1);
  f.polys[3] += Polynomial::monomial(2);
  const Report report = verify_skew_orthogonality(f, m);
  CHECK_FALSE(report.passed());
  bool q0q3 = false;
  for (const auto& c : report.checks) {
    if (c.id == "<q0|q3>") q0q3 = !c.passed;
  }
  CHECK(q0q3);

  SOPFamily empty;
  CHECK(verify_skew_orthogonality(empty, m).checks.empty());
}

TEST_CASE("singular tables") {
  // Pf(0,1,2,3) = s01 s23 - s02 s13 + s03 s12 = 0 - 1 + 1.
  std::vector<Rational> upper{1, 1, 1, 1, 1, 1, 2, 0, 4, 5};
  const SkewMoments m(4, upper, Provenance{.kind = "file"});
  REQUIRE(leading_pfaffian(m, 4) == 0);
  for (auto build : {build_family, oracle_family}) {
    try {
      build(m, 1);
      FAIL("expected SingularConfiguration");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularConfiguration);
    }
  }
  try {
    build_family(m, 2);
    FAIL("expected DegreeBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeBudgetExceeded);
  }
}
