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

#include "skewflow/moments.hpp"

#include <random>
#include <string>

#include "skewflow/error.hpp"
#include "skewflow/pfaffian.hpp"

namespace skewflow {

DiscreteMeasure::DiscreteMeasure(std::vector<Rational> nodes, std::vector<Rational> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) {
    raise(ErrorKind::InvalidArgument, "measure needs one weight per node");
  }
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (k > 0 && !(nodes_[k - 1] < nodes_[k])) {
      raise(ErrorKind::InvalidArgument, "measure nodes must be strictly increasing");
    }
    if (sgn(weights_[k]) <= 0) raise(ErrorKind::InvalidArgument, "measure weights must be positive");
  }
}

SkewMoments::SkewMoments(std::size_t max_index, std::vector<Rational> upper, Provenance provenance)
    : max_index_(max_index), upper_(std::move(upper)), provenance_(std::move(provenance)) {
  const std::size_t m = max_index_ + 1;
  if (upper_.size() != m * (m - 1) / 2) {
    raise(ErrorKind::InvalidArgument, "moment table size does not match max_index");
  }
}

std::size_t SkewMoments::offset(std::size_t i, std::size_t j) const noexcept {
  const std::size_t m = max_index_ + 1;
  return i * (2 * m - i - 1) / 2 + (j - i - 1);
}

Rational SkewMoments::operator()(std::size_t i, std::size_t j) const {
  if (i > max_index_ || j > max_index_) {
    raise(ErrorKind::IndexOutOfBudget, "moment s_" + std::to_string(i) + "," + std::to_string(j) +
                                           " outside max_index " + std::to_string(max_index_));
  }
  if (i == j) return 0;
  return i < j ? upper_[offset(i, j)] : Rational(-upper_[offset(j, i)]);
}

SkewMoments SkewMoments::scaled(const Rational& factor) const {
  std::vector<Rational> upper = upper_;
  for (auto& v : upper) v *= factor;
  Provenance p = provenance_;
  p.history.push_back("scale:" + format_rational(factor));
  return SkewMoments(max_index_, std::move(upper), std::move(p));
}

namespace {

template <class Entry>
std::vector<Rational> fill_upper(std::size_t max_index, Entry&& entry) {
  std::vector<Rational> upper;
  upper.reserve((max_index + 1) * max_index / 2);
  for (std::size_t i = 0; i <= max_index; ++i) {
    for (std::size_t j = i + 1; j <= max_index; ++j) upper.push_back(entry(i, j));
  }
  return upper;
}

bool leading_pfaffians_nonzero(const SkewMoments& m) {
  for (std::size_t count = 2; count <= m.max_index() + 1; count += 2) {
    if (sgn(leading_pfaffian(m, count)) == 0) return false;
  }
  return true;
}

}  // namespace

SkewMoments from_random(std::uint64_t seed, std::size_t max_index, unsigned bound) {
  if (max_index < 1) raise(ErrorKind::InvalidArgument, "random moments need max_index >= 1");
  if (bound < 1) raise(ErrorKind::InvalidArgument, "random moments need bound >= 1");

  constexpr std::uint64_t kMaxAttempts = 1000;
  for (std::uint64_t sub_seed = 0; sub_seed < kMaxAttempts; ++sub_seed) {
    std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                           static_cast<std::uint32_t>(sub_seed)};
    std::mt19937_64 engine(sequence);
    const std::uint64_t span = 2 * std::uint64_t{bound} + 1;
    auto upper = fill_upper(max_index, [&](std::size_t, std::size_t) -> Rational {
      const long num = static_cast<long>(engine() % span) - static_cast<long>(bound);
      const long den = static_cast<long>(engine() % bound) + 1;
      Rational r(num, den);
      r.canonicalize();
      return r;
    });
    Provenance p{.kind = "random", .seed = seed, .sub_seed = sub_seed, .bound = bound};
    SkewMoments candidate(max_index, std::move(upper), std::move(p));
    if (leading_pfaffians_nonzero(candidate)) return candidate;
  }
  raise(ErrorKind::SingularConfiguration, "no generic random table found for seed " + std::to_string(seed));
}

SkewMoments from_discrete_orthogonal(const DiscreteMeasure& measure, std::size_t max_index) {
  const auto& x = measure.nodes();
  const auto& w = measure.weights();
  const std::size_t count = measure.size();

  // powers[k][i] = x_k^i w_k
  std::vector<std::vector<Rational>> powers(count, std::vector<Rational>(max_index + 1));
  for (std::size_t k = 0; k < count; ++k) {
    Rational acc = w[k];
    for (std::size_t i = 0; i <= max_index; ++i) {
      powers[k][i] = acc;
      acc *= x[k];
    }
  }
  auto upper = fill_upper(max_index, [&](std::size_t i, std::size_t j) -> Rational {
    Rational sum;
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t l = 0; l < count; ++l) {
        const int sign = cmp(x[k], x[l]);
        if (sign > 0) sum += powers[k][i] * powers[l][j];
        else if (sign < 0) sum -= powers[k][i] * powers[l][j];
      }
    }
    return sum;
  });
  Provenance p{.kind = "orthogonal", .nodes = x, .weights = w};
  return SkewMoments(max_index, std::move(upper), std::move(p));
}

SkewMoments from_discrete_symplectic(const DiscreteMeasure& measure, std::size_t max_index) {
  const auto& x = measure.nodes();
  const auto& w = measure.weights();

  // power_sums[e] = sum_k x_k^e w_k for 0 <= e <= 2 max_index - 1.
  const std::size_t top = max_index == 0 ? 0 : 2 * max_index - 1;
  std::vector<Rational> power_sums(top + 1);
  for (std::size_t k = 0; k < measure.size(); ++k) {
    Rational acc = w[k];
    for (std::size_t e = 0; e <= top; ++e) {
      power_sums[e] += acc;
      acc *= x[k];
    }
  }
  auto upper = fill_upper(max_index, [&](std::size_t i, std::size_t j) -> Rational {
    // i < j, so i + j - 1 >= 0.
    return Rational(static_cast<long>(j - i)) * power_sums[i + j - 1];
  });
  Provenance p{.kind = "symplectic", .nodes = x, .weights = w};
  return SkewMoments(max_index, std::move(upper), std::move(p));
}

SkewMoments shift(const SkewMoments& moments, const Rational& c) {
  if (moments.max_index() == 0) {
    raise(ErrorKind::DegreeBudgetExceeded, "cannot shift a table with max_index 0");
  }
  const Rational c2 = c * c;
  const std::size_t max_index = moments.max_index() - 1;
  auto upper = fill_upper(max_index, [&](std::size_t i, std::size_t j) -> Rational {
    return Rational(moments(i + 1, j + 1) - c * moments(i + 1, j) - c * moments(i, j + 1) +
                    c2 * moments(i, j));
  });
  Provenance p = moments.provenance();
  p.history.push_back("shift:" + format_rational(c));
  return SkewMoments(max_index, std::move(upper), std::move(p));
}

}  // namespace skewflow
