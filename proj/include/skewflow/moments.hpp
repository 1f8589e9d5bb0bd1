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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewflow/rational.hpp"

namespace skewflow {

/// How a moment table came to be; carried into every report so a failing
/// instance can be rebuilt from the report alone.
struct Provenance {
  std::string kind;  // "random", "orthogonal", "symplectic", "file"
  std::optional<std::uint64_t> seed{};
  std::optional<std::uint64_t> sub_seed{};
  std::optional<unsigned> bound{};
  std::vector<Rational> nodes{};
  std::vector<Rational> weights{};
  /// Post-construction operations in order, e.g. "shift:1/2", "scale:3/1".
  std::vector<std::string> history{};

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Finite rational point set with positive weights; stands in for the
/// integration domain and weight of the ensemble inner products.
class DiscreteMeasure {
 public:
  /// Throws Error(InvalidArgument) unless nodes are strictly increasing,
  /// weights are positive and both lists have the same length.
  DiscreteMeasure(std::vector<Rational> nodes, std::vector<Rational> weights);

  const std::vector<Rational>& nodes() const noexcept { return nodes_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  std::vector<Rational> nodes_;
  std::vector<Rational> weights_;
};

/// Skew-moment table s_ij = <z^i | z^j> for 0 <= i, j <= max_index.
/// Only i < j is stored; s_ji = -s_ij and s_ii = 0 by construction.
class SkewMoments {
 public:
  /// `upper` holds s_ij for i < j in row-major order over the upper triangle.
  SkewMoments(std::size_t max_index, std::vector<Rational> upper, Provenance provenance);

  std::size_t max_index() const noexcept { return max_index_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// s_ij; throws Error(IndexOutOfBudget) past max_index.
  Rational operator()(std::size_t i, std::size_t j) const;

  SkewMoments scaled(const Rational& factor) const;

  friend bool operator==(const SkewMoments&, const SkewMoments&) = default;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const noexcept;

  std::size_t max_index_;
  std::vector<Rational> upper_;
  Provenance provenance_;
};

/// Seeded random table with numerators in [-bound, bound] and denominators in
/// [1, bound]. Draws are retried under an incremented sub-seed until every
/// leading principal Pfaffian Pf(0..2n-1), 2n <= max_index + 1, is nonzero.
SkewMoments from_random(std::uint64_t seed, std::size_t max_index, unsigned bound);

/// s_ij = sum_{k,l} sgn(x_k - x_l) x_k^i x_l^j w_k w_l, with sgn(0) = 0.
SkewMoments from_discrete_orthogonal(const DiscreteMeasure& measure, std::size_t max_index);

/// s_ij = sum_k (x^i (x^j)' - (x^i)' x^j) w_k = (j - i) sum_k x_k^{i+j-1} w_k.
SkewMoments from_discrete_symplectic(const DiscreteMeasure& measure, std::size_t max_index);

/// Table of <(z-c) . | (z-c) . >: s'_ij = s_{i+1,j+1} - c s_{i+1,j} - c s_{i,j+1}
/// + c^2 s_ij, one index shorter. Throws Error(DegreeBudgetExceeded) when
/// max_index is already 0.
SkewMoments shift(const SkewMoments& moments, const Rational& c);

}  // namespace skewflow
