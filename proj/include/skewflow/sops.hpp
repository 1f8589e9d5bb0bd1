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
#include <string>
#include <vector>

#include "skewflow/moments.hpp"
#include "skewflow/polynomial.hpp"
#include "skewflow/rational.hpp"
#include "skewflow/report.hpp"

namespace skewflow {

inline constexpr const char* kGaugePfaffian = "pfaffian-alpha-zero";
inline constexpr const char* kGaugeOracle = "z2n-coefficient-zero";
inline constexpr const char* kGaugeChristoffel = "christoffel-alpha-zero";

/// q_0..q_{2N+1} with r_0..r_N. An empty family has no polynomials.
struct SOPFamily {
  std::size_t pairs = 0;
  std::vector<Polynomial> polys;
  std::vector<Rational> norms;
  std::string gauge = kGaugePfaffian;

  const Polynomial& even(std::size_t n) const { return polys.at(2 * n); }
  const Polynomial& odd(std::size_t n) const { return polys.at(2 * n + 1); }

  friend bool operator==(const SOPFamily&, const SOPFamily&) = default;
};

/// sum_{i,j} f_i g_j s_ij. Throws Error(DegreeBudgetExceeded) when a degree
/// exceeds max_index.
Rational skew_product(const SkewMoments& moments, const Polynomial& f, const Polynomial& g);

/// q_2n = Pf(0..2n, z) / Pf(0..2n-1).
Polynomial sop_even(const SkewMoments& moments, std::size_t n);

/// q_{2n+1} = Pf(0..2n-1, 2n+1, z) / Pf(0..2n-1).
Polynomial sop_odd(const SkewMoments& moments, std::size_t n);

/// r_n = <q_2n | q_{2n+1}>; throws Error(SingularConfiguration) when zero.
Rational normalization(const SkewMoments& moments, std::size_t n);

/// Pfaffian-formula family; every defining relation is checked before
/// returning.
SOPFamily build_family(const SkewMoments& moments, std::size_t pairs);

/// Independent construction by exact linear solves of the defining relations,
/// with the z^{2n} coefficient of q_{2n+1} fixed at 0.
SOPFamily oracle_family(const SkewMoments& moments, std::size_t pairs);

/// First `pairs` + 1 pairs of a family.
SOPFamily truncate(const SOPFamily& family, std::size_t pairs);

/// Every pairing <q_a | q_b>, a < b <= 2N+1, against the defining pattern.
Report verify_skew_orthogonality(const SOPFamily& family, const SkewMoments& moments);

}  // namespace skewflow
