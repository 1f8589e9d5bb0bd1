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

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skewflow/error.hpp"
#include "skewflow/pfaffian.hpp"

using namespace skewflow;
using Idx = AugmentedIndex;

TEST_CASE("small Pfaffians") {
  SkewMatrix empty(0);
  CHECK(pfaffian(empty) == 1);
  CHECK(pfaffian_expand(empty) == 1);

  SkewMatrix two(2);
  two.set(0, 1, Rational(-5, 3));
  CHECK(pfaffian(two) == Rational(-5, 3));
  CHECK(pfaffian_expand(two) == Rational(-5, 3));

  const SkewMatrix four = oracle::random_skew(3, 4);
  const Rational expected = four(0, 1) * four(2, 3) - four(0, 2) * four(1, 3) + four(0, 3) * four(1, 2);
  CHECK(pfaffian(four) == expected);
  CHECK(pfaffian_expand(four) == expected);

  CHECK_THROWS_AS(SkewMatrix(3), Error);
}

TEST_CASE("elimination agrees with expansion and determinant") {
  for (std::size_t m = 2; m <= 12; m += 2) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SkewMatrix s = oracle::random_skew(seed * 100 + m, m);
      const Rational pf = pfaffian(s);
      CHECK(pf == pfaffian_expand(s));
      CHECK(pf * pf == oracle::determinant(s));
    }
  }
}

TEST_CASE("zero pivots and rank deficiency") {
  SkewMatrix s(4);
  s.set(0, 2, 3);
  s.set(1, 3, 2);
  CHECK(pfaffian(s) == -6);
  CHECK(pfaffian_expand(s) == -6);

  SkewMatrix degenerate(6);
  degenerate.set(0, 1, 1);
  degenerate.set(2, 3, 1);
  CHECK(pfaffian(degenerate) == 0);
  CHECK(pfaffian_expand(degenerate) == 0);
}

TEST_CASE("augmented Pfaffian examples") {
  const SkewMoments m = oracle::symplectic_test_moments();
  const std::vector<Idx> zero_z{Idx::monomial(0), Idx::z()};
  CHECK(augmented_pfaffian(m, zero_z) == Polynomial({1}));

  const std::vector<Idx> mu_lambda{Idx::mu(), Idx::lambda()};
  CHECK(augmented_pfaffian(m, mu_lambda, 2, 3).is_zero());

  const std::vector<Idx> even{Idx::monomial(0), Idx::monomial(1), Idx::monomial(2), Idx::z()};
  CHECK(augmented_pfaffian(m, even) == Polynomial({5, -6, 2}));

  const std::vector<Idx> odd{Idx::monomial(0), Idx::monomial(1), Idx::monomial(3), Idx::z()};
  CHECK(augmented_pfaffian(m, odd) == Polynomial({18, -15, 0, 2}));

  const std::vector<Idx> mu_row{Idx::monomial(0), Idx::monomial(1), Idx::monomial(2), Idx::mu()};
  const Rational mu(1, 2);
  CHECK(augmented_pfaffian(m, mu_row, mu) == Polynomial::constant(poly_eval(Polynomial({5, -6, 2}), mu)));
}

TEST_CASE("augmented Pfaffian errors") {
  const SkewMoments m = oracle::symplectic_test_moments(3);
  const std::vector<Idx> odd_length{Idx::monomial(0), Idx::monomial(1), Idx::z()};
  CHECK_THROWS_AS(augmented_pfaffian(m, odd_length), Error);
  const std::vector<Idx> twice{Idx::monomial(0), Idx::z(), Idx::monomial(1), Idx::z()};
  CHECK_THROWS_AS(augmented_pfaffian(m, twice), Error);
  const std::vector<Idx> beyond{Idx::monomial(0), Idx::monomial(4)};
  try {
    augmented_pfaffian(m, beyond);
    FAIL("expected IndexOutOfBudget");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfBudget);
  }
}

TEST_CASE("antisymmetry, repeated index and multilinearity") {
  const SkewMoments m = from_random(11, 9, 5);
  std::vector<Idx> list{Idx::monomial(0), Idx::monomial(2), Idx::mu(), Idx::monomial(5),
                        Idx::z(), Idx::monomial(7)};
  const Rational mu(-2, 3);
  const Polynomial base = augmented_pfaffian(m, list, mu);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      auto swapped = list;
      std::swap(swapped[i], swapped[j]);
      CHECK(augmented_pfaffian(m, swapped, mu) == -base);
    }
  }
  const std::vector<Idx> repeated{Idx::monomial(1), Idx::monomial(3), Idx::monomial(1),
                                  Idx::monomial(4)};
  CHECK(augmented_pfaffian(m, repeated).is_zero());

  std::mt19937_64 rng(5);
  for (std::size_t dim : {4, 6}) {
    const SkewMatrix x = oracle::random_skew(rng(), dim);
    const SkewMatrix y = oracle::random_skew(rng(), dim);
    const Rational a = oracle::draw(rng, 7), b = oracle::draw(rng, 7);
    // Replace the last row/column by a x_col + b y_col.
    SkewMatrix xs = x, ys = x, combined = x;
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      ys.set(i, dim - 1, y(i, dim - 1));
      combined.set(i, dim - 1, a * x(i, dim - 1) + b * y(i, dim - 1));
    }
    CHECK(pfaffian(combined) == a * pfaffian(xs) + b * pfaffian(ys));
  }
}
