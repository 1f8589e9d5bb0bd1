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
#include <span>
#include <vector>

#include "skewflow/moments.hpp"
#include "skewflow/polynomial.hpp"
#include "skewflow/rational.hpp"

namespace skewflow {

/// Even-dimensional skew-symmetric matrix; only the strict upper triangle is
/// stored.
class SkewMatrix {
 public:
  /// Throws Error(InvalidArgument) for odd dimensions.
  explicit SkewMatrix(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }

  Rational operator()(std::size_t i, std::size_t j) const;
  /// Sets a_ij (and implicitly a_ji = -a_ij). i == j is rejected.
  void set(std::size_t i, std::size_t j, const Rational& value);

 private:
  std::size_t offset(std::size_t i, std::size_t j) const noexcept;

  std::size_t dimension_;
  std::vector<Rational> upper_;
};

/// Skew elimination (Parlett-Reid style): reduce to tridiagonal form by
/// congruence, multiply the superdiagonal pivots. Pf of the empty matrix is 1.
Rational pfaffian(const SkewMatrix& matrix);

/// Recursive expansion along the last column with memoized minors. Used as
/// the independent check on pfaffian(); exponential, intended for small m.
Rational pfaffian_expand(const SkewMatrix& matrix);

/// Index of an augmented Pfaffian: a moment index i, or one of the special
/// symbols mu, lambda, z.
struct AugmentedIndex {
  enum class Kind { Monomial, Mu, Lambda, Zvar };

  Kind kind = Kind::Monomial;
  std::size_t index = 0;

  static constexpr AugmentedIndex monomial(std::size_t i) { return {Kind::Monomial, i}; }
  static constexpr AugmentedIndex mu() { return {Kind::Mu, 0}; }
  static constexpr AugmentedIndex lambda() { return {Kind::Lambda, 0}; }
  static constexpr AugmentedIndex z() { return {Kind::Zvar, 0}; }

  friend bool operator==(const AugmentedIndex&, const AugmentedIndex&) = default;
};

/// Monomial indices first..last inclusive (empty when last < first).
std::vector<AugmentedIndex> index_range(long first, long last);

/// Pfaffian over mixed indices with Pf(i,j) = s_ij, Pf(i,z) = z^i,
/// Pf(i,mu) = mu^i, Pf(i,lambda) = lambda^i and zero between any two special
/// symbols. The z row is expanded first, so the result is a polynomial in z
/// (a constant when z is absent); mu and lambda become ordinary numeric rows.
///
/// Throws Error(InvalidArgument) for odd length or a repeated special symbol,
/// Error(IndexOutOfBudget) when a moment index exceeds the table.
Polynomial augmented_pfaffian(const SkewMoments& moments, std::span<const AugmentedIndex> indices,
                              const Rational& mu = 0, const Rational& lambda = 0);

/// Pf(i_0, ..., i_{2n-1}) of a moment minor.
Rational moment_pfaffian(const SkewMoments& moments, std::span<const std::size_t> indices);

/// Pf(0, 1, ..., count-1) of the leading principal minor.
Rational leading_pfaffian(const SkewMoments& moments, std::size_t count);

}  // namespace skewflow
