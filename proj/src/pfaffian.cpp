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

#include "skewflow/pfaffian.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "skewflow/error.hpp"

namespace skewflow {

SkewMatrix::SkewMatrix(std::size_t dimension) : dimension_(dimension) {
  if (dimension % 2 != 0) {
    raise(ErrorKind::InvalidArgument,
          "Pfaffian needs an even dimension, got " + std::to_string(dimension));
  }
  upper_.resize(dimension * (dimension > 0 ? dimension - 1 : 0) / 2);
}

std::size_t SkewMatrix::offset(std::size_t i, std::size_t j) const noexcept {
  // Row i of the strict upper triangle starts after rows 0..i-1.
  return i * (2 * dimension_ - i - 1) / 2 + (j - i - 1);
}

Rational SkewMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return 0;
  return i < j ? upper_[offset(i, j)] : Rational(-upper_[offset(j, i)]);
}

void SkewMatrix::set(std::size_t i, std::size_t j, const Rational& value) {
  if (i == j) raise(ErrorKind::InvalidArgument, "diagonal of a skew matrix is fixed at 0");
  if (i < j) upper_[offset(i, j)] = value;
  else upper_[offset(j, i)] = -value;
}

Rational pfaffian(const SkewMatrix& matrix) {
  const std::size_t n = matrix.dimension();
  if (n == 0) return 1;

  std::vector<Rational> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      a[i * n + j] = matrix(i, j);
      a[j * n + i] = -a[i * n + j];
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };

  Rational result = 1;
  std::vector<Rational> factor(n);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    // Pivot: largest height among the nonzero entries of row k to the right.
    std::size_t pivot = n;
    Integer best;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(at(k, j)) == 0) continue;
      Integer h = height(at(k, j));
      if (pivot == n || h > best) {
        pivot = j;
        best = std::move(h);
      }
    }
    if (pivot == n) return 0;

    if (pivot != k + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(pivot, c), at(k + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(at(r, pivot), at(r, k + 1));
      result = -result;
    }

    const Rational pivot_value = at(k, k + 1);
    result *= pivot_value;

    // Congruence with row/col ops i -= f_i (k+1) clears row k beyond k+1; only
    // the trailing block feeds the remaining Pfaffian.
    for (std::size_t i = k + 2; i < n; ++i) factor[i] = at(k, i) / pivot_value;
    for (std::size_t i = k + 2; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational& entry = at(i, j);
        entry -= factor[i] * at(k + 1, j);
        entry += factor[j] * at(k + 1, i);
        at(j, i) = -entry;
      }
    }
  }
  return result;
}

namespace {

class ExpansionMemo {
 public:
  explicit ExpansionMemo(const SkewMatrix& matrix) : matrix_(matrix) {}

  Rational operator()(std::uint64_t mask) {
    if (mask == 0) return 1;
    if (auto it = cache_.find(mask); it != cache_.end()) return it->second;

    const int last = 63 - std::countl_zero(mask);
    const std::uint64_t rest = mask & ~(std::uint64_t{1} << last);
    Rational sum;
    int position = 0;
    for (std::uint64_t bits = rest; bits != 0; bits &= bits - 1, ++position) {
      const int k = std::countr_zero(bits);
      const Rational& entry = matrix_(static_cast<std::size_t>(k), static_cast<std::size_t>(last));
      if (sgn(entry) == 0) continue;
      Rational term = entry * (*this)(rest & ~(std::uint64_t{1} << k));
      if (position % 2 == 0) sum += term;
      else sum -= term;
    }
    cache_.emplace(mask, sum);
    return sum;
  }

 private:
  const SkewMatrix& matrix_;
  std::unordered_map<std::uint64_t, Rational> cache_;
};

}  // namespace

Rational pfaffian_expand(const SkewMatrix& matrix) {
  const std::size_t n = matrix.dimension();
  if (n > 62) raise(ErrorKind::InvalidArgument, "pfaffian_expand supports dimension <= 62");
  ExpansionMemo memo(matrix);
  const std::uint64_t full = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
  return memo(full);
}

std::vector<AugmentedIndex> index_range(long first, long last) {
  std::vector<AugmentedIndex> out;
  for (long i = first; i <= last; ++i) out.push_back(AugmentedIndex::monomial(static_cast<std::size_t>(i)));
  return out;
}

namespace {

using Kind = AugmentedIndex::Kind;

Rational element(const SkewMoments& moments, const AugmentedIndex& a, const AugmentedIndex& b,
                 const Rational& mu, const Rational& lambda) {
  auto special_value = [&](const AugmentedIndex& s) -> const Rational& {
    return s.kind == Kind::Mu ? mu : lambda;
  };
  if (a.kind == Kind::Monomial && b.kind == Kind::Monomial) {
    return a.index == b.index ? Rational(0) : moments(a.index, b.index);
  }
  if (a.kind == Kind::Monomial) return power(special_value(b), static_cast<unsigned>(a.index));
  if (b.kind == Kind::Monomial) return -power(special_value(a), static_cast<unsigned>(b.index));
  return 0;
}

Rational numeric_pfaffian(const SkewMoments& moments, std::span<const AugmentedIndex> indices,
                          const Rational& mu, const Rational& lambda) {
  SkewMatrix matrix(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      Rational value = element(moments, indices[i], indices[j], mu, lambda);
      if (sgn(value) != 0) matrix.set(i, j, value);
    }
  }
  return pfaffian(matrix);
}

}  // namespace

Polynomial augmented_pfaffian(const SkewMoments& moments, std::span<const AugmentedIndex> indices,
                              const Rational& mu, const Rational& lambda) {
  if (indices.size() % 2 != 0) {
    raise(ErrorKind::InvalidArgument, "augmented Pfaffian needs an even number of indices");
  }
  int mu_count = 0, lambda_count = 0, z_count = 0;
  std::size_t z_position = 0;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    switch (indices[p].kind) {
      case Kind::Monomial:
        if (indices[p].index > moments.max_index()) {
          raise(ErrorKind::IndexOutOfBudget,
                "moment index " + std::to_string(indices[p].index) + " exceeds max_index " +
                    std::to_string(moments.max_index()));
        }
        break;
      case Kind::Mu: ++mu_count; break;
      case Kind::Lambda: ++lambda_count; break;
      case Kind::Zvar:
        ++z_count;
        z_position = p;
        break;
    }
  }
  if (mu_count > 1 || lambda_count > 1 || z_count > 1) {
    raise(ErrorKind::InvalidArgument, "special index repeated in augmented Pfaffian");
  }

  if (z_count == 0) {
    return Polynomial::constant(numeric_pfaffian(moments, indices, mu, lambda));
  }

  // Move z to the end, then expand along it:
  // Pf(r_0..r_{m-2}, z) = sum_k (-1)^k Pf(r_k, z) Pf(r without r_k).
  std::vector<AugmentedIndex> rest;
  rest.reserve(indices.size() - 1);
  for (std::size_t p = 0; p < indices.size(); ++p) {
    if (p != z_position) rest.push_back(indices[p]);
  }
  const bool flip = (indices.size() - 1 - z_position) % 2 != 0;

  std::size_t top = 0;
  for (const auto& r : rest) {
    if (r.kind == Kind::Monomial) top = std::max(top, r.index);
  }
  std::vector<Rational> coefficients(rest.empty() ? 0 : top + 1);
  std::vector<AugmentedIndex> minor;
  for (std::size_t k = 0; k < rest.size(); ++k) {
    if (rest[k].kind != Kind::Monomial) continue;
    minor.clear();
    for (std::size_t p = 0; p < rest.size(); ++p) {
      if (p != k) minor.push_back(rest[p]);
    }
    Rational value = numeric_pfaffian(moments, minor, mu, lambda);
    if ((k % 2 != 0) != flip) coefficients[rest[k].index] -= value;
    else coefficients[rest[k].index] += value;
  }
  return Polynomial(std::move(coefficients));
}

Rational moment_pfaffian(const SkewMoments& moments, std::span<const std::size_t> indices) {
  std::vector<AugmentedIndex> list;
  list.reserve(indices.size());
  for (std::size_t i : indices) list.push_back(AugmentedIndex::monomial(i));
  return augmented_pfaffian(moments, list).coefficient(0);
}

Rational leading_pfaffian(const SkewMoments& moments, std::size_t count) {
  const auto list = index_range(0, static_cast<long>(count) - 1);
  return augmented_pfaffian(moments, list).coefficient(0);
}

}  // namespace skewflow
