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

#include "skewflow/sops.hpp"

#include <string>
#include <utility>

#include "skewflow/error.hpp"
#include "skewflow/pfaffian.hpp"

namespace skewflow {

namespace {

void require_degree(const SkewMoments& moments, long degree, const char* what) {
  if (degree > static_cast<long>(moments.max_index())) {
    raise(ErrorKind::DegreeBudgetExceeded, std::string(what) + " needs moment index " +
                                               std::to_string(degree) + " but max_index is " +
                                               std::to_string(moments.max_index()));
  }
}

Rational tau(const SkewMoments& moments, std::size_t n) {
  Rational value = leading_pfaffian(moments, 2 * n);
  if (sgn(value) == 0) {
    raise(ErrorKind::SingularConfiguration,
          "Pf(0..2n-1) vanishes at n = " + std::to_string(n));
  }
  return value;
}

// Solves x^T S = b^T for the leading k x k moment block, i.e.
// sum_j x_j s_{j,c} = b_c. Fraction-carrying Gauss-Jordan.
std::vector<Rational> solve_left(const SkewMoments& moments, std::size_t k,
                                 const std::vector<Rational>& rhs, std::size_t failing_index) {
  // Row c of the augmented system: sum_j s_{j,c} x_j = rhs_c.
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < k; ++j) a[c][j] = moments(j, c);
    a[c][k] = rhs[c];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == k) {
      raise(ErrorKind::SingularConfiguration,
            "defining linear system is singular for q_" + std::to_string(failing_index));
    }
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j <= k; ++j) a[col][j] *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j <= k; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> x(k);
  for (std::size_t j = 0; j < k; ++j) x[j] = a[j][k];
  return x;
}

Polynomial oracle_poly(const SkewMoments& moments, std::size_t n, std::size_t degree) {
  const std::size_t k = 2 * n;
  std::vector<Rational> rhs(k);
  for (std::size_t c = 0; c < k; ++c) rhs[c] = -moments(degree, c);
  std::vector<Rational> coefficients = solve_left(moments, k, rhs, degree);
  coefficients.resize(degree + 1);
  coefficients[degree] = 1;
  return Polynomial(std::move(coefficients));
}

}  // namespace

Rational skew_product(const SkewMoments& moments, const Polynomial& f, const Polynomial& g) {
  require_degree(moments, f.degree(), "skew product");
  require_degree(moments, g.degree(), "skew product");
  const auto fc = f.coefficients();
  const auto gc = g.coefficients();
  Rational sum;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (sgn(fc[i]) == 0) continue;
    Rational row;
    for (std::size_t j = 0; j < gc.size(); ++j) {
      if (i != j && sgn(gc[j]) != 0) row += gc[j] * moments(i, j);
    }
    sum += fc[i] * row;
  }
  return sum;
}

Polynomial sop_even(const SkewMoments& moments, std::size_t n) {
  require_degree(moments, static_cast<long>(2 * n), "q_2n");
  const Rational denominator = tau(moments, n);
  auto indices = index_range(0, static_cast<long>(2 * n));
  indices.push_back(AugmentedIndex::z());
  return augmented_pfaffian(moments, indices) * Rational(1 / denominator);
}

Polynomial sop_odd(const SkewMoments& moments, std::size_t n) {
  require_degree(moments, static_cast<long>(2 * n + 1), "q_{2n+1}");
  const Rational denominator = tau(moments, n);
  auto indices = index_range(0, static_cast<long>(2 * n) - 1);
  indices.push_back(AugmentedIndex::monomial(2 * n + 1));
  indices.push_back(AugmentedIndex::z());
  return augmented_pfaffian(moments, indices) * Rational(1 / denominator);
}

Rational normalization(const SkewMoments& moments, std::size_t n) {
  Rational r = skew_product(moments, sop_even(moments, n), sop_odd(moments, n));
  if (sgn(r) == 0) {
    raise(ErrorKind::SingularConfiguration, "r_n vanishes at n = " + std::to_string(n));
  }
  return r;
}

SOPFamily build_family(const SkewMoments& moments, std::size_t pairs) {
  require_degree(moments, static_cast<long>(2 * pairs + 1), "family");
  SOPFamily family;
  family.pairs = pairs;
  family.gauge = kGaugePfaffian;
  for (std::size_t n = 0; n <= pairs; ++n) {
    family.polys.push_back(sop_even(moments, n));
    family.polys.push_back(sop_odd(moments, n));
    Rational r = skew_product(moments, family.even(n), family.odd(n));
    if (sgn(r) == 0) {
      raise(ErrorKind::SingularConfiguration, "r_n vanishes at n = " + std::to_string(n));
    }
    family.norms.push_back(std::move(r));
  }
  const Report report = verify_skew_orthogonality(family, moments);
  for (const auto& c : report.checks) {
    if (!c.passed) raise(ErrorKind::SingularConfiguration, "family violates " + c.id + ": " + c.detail);
  }
  return family;
}

SOPFamily oracle_family(const SkewMoments& moments, std::size_t pairs) {
  require_degree(moments, static_cast<long>(2 * pairs + 1), "family");
  SOPFamily family;
  family.pairs = pairs;
  family.gauge = kGaugeOracle;
  for (std::size_t n = 0; n <= pairs; ++n) {
    family.polys.push_back(oracle_poly(moments, n, 2 * n));
    family.polys.push_back(oracle_poly(moments, n, 2 * n + 1));
    Rational r = skew_product(moments, family.even(n), family.odd(n));
    if (sgn(r) == 0) {
      raise(ErrorKind::SingularConfiguration, "r_n vanishes at n = " + std::to_string(n));
    }
    family.norms.push_back(std::move(r));
  }
  return family;
}

SOPFamily truncate(const SOPFamily& family, std::size_t pairs) {
  if (pairs > family.pairs || family.polys.empty()) {
    raise(ErrorKind::InvalidArgument, "cannot truncate a family of " +
                                          std::to_string(family.pairs) + " pairs to " +
                                          std::to_string(pairs));
  }
  SOPFamily out = family;
  out.pairs = pairs;
  out.polys.resize(2 * pairs + 2);
  out.norms.resize(pairs + 1);
  return out;
}

Report verify_skew_orthogonality(const SOPFamily& family, const SkewMoments& moments) {
  Report report;
  report.suite = "orthogonality";
  const std::size_t count = family.polys.size();
  for (std::size_t n = 0; n < count; ++n) {
    const long expected = static_cast<long>(n);
    report.check("degree:q" + std::to_string(n), family.polys[n].degree() == expected,
                 "deg = " + std::to_string(family.polys[n].degree()));
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const Rational value = skew_product(moments, family.polys[a], family.polys[b]);
      const std::string id = "<q" + std::to_string(a) + "|q" + std::to_string(b) + ">";
      if (a % 2 == 0 && b == a + 1) {
        const Rational& r = family.norms.at(a / 2);
        report.check(id, value == r && sgn(r) != 0,
                     "lhs = " + format_rational(value) + ", r = " + format_rational(r));
      } else {
        report.check(id, sgn(value) == 0, "lhs = " + format_rational(value) + ", rhs = 0/1");
      }
    }
  }
  return report;
}

}  // namespace skewflow
