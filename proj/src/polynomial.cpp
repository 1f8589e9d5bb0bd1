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

#include "skewflow/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "skewflow/error.hpp"

namespace skewflow {

Polynomial::Polynomial(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coefficients)
    : coefficients_(coefficients) {
  trim();
}

Polynomial Polynomial::constant(const Rational& value) { return Polynomial({value}); }

Polynomial Polynomial::monomial(std::size_t degree, const Rational& coefficient) {
  std::vector<Rational> c(degree + 1);
  c[degree] = coefficient;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::linear_factor(const Rational& root) {
  return Polynomial({Rational(-root), Rational(1)});
}

void Polynomial::trim() {
  while (!coefficients_.empty() && sgn(coefficients_.back()) == 0) coefficients_.pop_back();
}

Rational Polynomial::coefficient(std::size_t k) const {
  return k < coefficients_.size() ? coefficients_[k] : Rational(0);
}

Rational Polynomial::leading() const {
  return coefficients_.empty() ? Rational(0) : coefficients_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(other.coefficients_.size());
  }
  for (std::size_t k = 0; k < other.coefficients_.size(); ++k) {
    coefficients_[k] += other.coefficients_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(other.coefficients_.size());
  }
  for (std::size_t k = 0; k < other.coefficients_.size(); ++k) {
    coefficients_[k] -= other.coefficients_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    coefficients_.clear();
    return *this;
  }
  for (auto& c : coefficients_) c *= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> product(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a.coefficients_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      product[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return Polynomial(std::move(product));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coefficients_.size(); k-- > 0;) {
    const Rational& c = coefficients_[k];
    if (sgn(c) == 0) continue;
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << "-";
    const Rational mag = abs(c);
    if (k == 0 || mag != 1) out << mag.get_str();
    if (k >= 1) out << "z";
    if (k >= 2) out << "^" << k;
    first = false;
  }
  return out.str();
}

Rational poly_eval(const Polynomial& p, const Rational& x) { return p(x); }

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial div_by_linear(const Polynomial& p, const Rational& root) {
  if (p.is_zero()) return {};
  const auto c = p.coefficients();
  std::vector<Rational> quotient(c.size() - 1);
  Rational carry;
  for (std::size_t k = c.size(); k-- > 0;) {
    carry = carry * root + c[k];
    if (k > 0) quotient[k - 1] = carry;
  }
  if (sgn(carry) != 0) {
    raise(ErrorKind::NotDivisible,
          "polynomial does not vanish at " + format_rational(root) + " (remainder " +
              format_rational(carry) + ")");
  }
  return Polynomial(std::move(quotient));
}

std::vector<Rational> sample_points(std::size_t count, std::span<const Rational> avoid) {
  static const Rational kHead[] = {0, 1, -1, 2, -2, Rational(1, 2), Rational(-1, 3), 3, 5, 7};
  std::vector<Rational> out;
  auto offer = [&](const Rational& x) {
    if (out.size() == count || std::find(avoid.begin(), avoid.end(), x) != avoid.end()) return;
    out.push_back(x);
  };
  for (const auto& x : kHead) offer(x);
  for (long odd = 9; out.size() < count; odd += 2) offer(Rational(odd));
  return out;
}

}  // namespace skewflow
