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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "skewflow/rational.hpp"

namespace skewflow {

/// Dense univariate polynomial over the rationals. Coefficient k multiplies
/// z^k; there is never a trailing zero, so the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<Rational> coefficients);

  static Polynomial constant(const Rational& value);
  static Polynomial monomial(std::size_t degree, const Rational& coefficient = 1);
  /// z - root
  static Polynomial linear_factor(const Rational& root);

  bool is_zero() const noexcept { return coefficients_.empty(); }
  /// Degree of a nonzero polynomial; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coefficients_.size()) - 1; }
  std::size_t size() const noexcept { return coefficients_.size(); }

  /// Coefficient of z^k, zero beyond the degree.
  Rational coefficient(std::size_t k) const;
  Rational leading() const;
  std::span<const Rational> coefficients() const noexcept { return coefficients_; }

  Rational operator()(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::string to_string() const;

 private:
  void trim();

  std::vector<Rational> coefficients_;
};

Rational poly_eval(const Polynomial& p, const Rational& x);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

/// Returns q with p = (z - root) * q. Throws Error(NotDivisible) when
/// p(root) != 0.
Polynomial div_by_linear(const Polynomial& p, const Rational& root);

/// Deterministic evaluation points 0, 1, -1, 2, -2, 1/2, -1/3, 3, 5, 7, 9, ...
/// skipping any value listed in `avoid`.
std::vector<Rational> sample_points(std::size_t count, std::span<const Rational> avoid = {});

}  // namespace skewflow
