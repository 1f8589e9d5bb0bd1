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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "skewflow/moments.hpp"
#include "skewflow/polynomial.hpp"
#include "skewflow/rational.hpp"
#include "skewflow/report.hpp"

namespace skewflow {

/// Box 0 <= s <= S, 0 <= t <= T with pair index n = 0..N.
struct LatticeConfig {
  Rational mu;
  Rational lambda;
  std::size_t pairs = 0;
  std::size_t s_extent = 0;
  std::size_t t_extent = 0;

  /// Smallest base max_index the grid accepts: 2N + S + T + 4.
  std::size_t required_max_index() const { return 2 * pairs + s_extent + t_extent + 4; }

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

/// tau, sigma (scalars) and tauhat, sigmahat (polynomials in z) for
/// n = 0..N+1 at every site of the box, with the shifted moment table of
/// each site.
class TauGrid {
 public:
  /// Assembles a grid from stored values; tables are rebuilt from `base`.
  TauGrid(LatticeConfig config, const SkewMoments& base, std::vector<Rational> tau,
          std::vector<Rational> sigma, std::vector<Polynomial> tau_hat,
          std::vector<Polynomial> sigma_hat);

  const LatticeConfig& config() const noexcept { return config_; }
  std::size_t levels() const noexcept { return config_.pairs + 2; }
  const SkewMoments& base() const { return tables_.front(); }
  const SkewMoments& table(std::size_t s, std::size_t t) const;

  bool contains(long n, long s, long t) const;
  const Rational& tau(std::size_t n, std::size_t s, std::size_t t) const;
  const Rational& sigma(std::size_t n, std::size_t s, std::size_t t) const;
  const Polynomial& tau_hat(std::size_t n, std::size_t s, std::size_t t) const;
  const Polynomial& sigma_hat(std::size_t n, std::size_t s, std::size_t t) const;

  /// Flat storage, index ((n (S+1)) + s)(T+1) + t.
  std::span<const Rational> tau_values() const noexcept { return tau_; }
  std::span<const Rational> sigma_values() const noexcept { return sigma_; }
  std::span<const Polynomial> tau_hat_values() const noexcept { return tau_hat_; }
  std::span<const Polynomial> sigma_hat_values() const noexcept { return sigma_hat_; }
  std::size_t flat(std::size_t n, std::size_t s, std::size_t t) const;

  /// s-fold mu shift then t-fold lambda shift of `base`.
  static std::vector<SkewMoments> shifted_tables(const SkewMoments& base,
                                                 const LatticeConfig& config);

  friend bool operator==(const TauGrid&, const TauGrid&) = default;

 private:
  LatticeConfig config_;
  std::vector<SkewMoments> tables_;
  std::vector<Rational> tau_, sigma_;
  std::vector<Polynomial> tau_hat_, sigma_hat_;
};

/// tau_n = Pf(0..2n-1), tauhat_n = Pf(0..2n, z),
/// sigma_n = Pf(0..2n-2, 2n) + (s mu + t lambda) tau_n (Pfaffian part 0 at n = 0),
/// sigmahat_n = Pf(0..2n-1, 2n+1, z) + (s mu + t lambda) tauhat_n,
/// all on the (s, t) table. Throws Error(InvalidArgument) if mu == lambda,
/// Error(DegreeBudgetExceeded) below required_max_index() and
/// Error(SingularConfiguration) on the first vanishing tau.
TauGrid build_grid(const SkewMoments& moments, const LatticeConfig& config);

/// Copy with sigma replaced by tau and sigmahat by tauhat.
TauGrid degenerate_sigma(const TauGrid& grid);

/// One-step augmented-Pfaffian expressions at (n, s, t), s < S, t < T.
Report crosscheck_single_step(const TauGrid& grid, std::size_t n, std::size_t s, std::size_t t);

/// crosscheck_single_step over every n <= N and interior site.
Report verify_crosscheck(const TauGrid& grid);

/// Scalar coefficients A, B, C, D on n = 0..N, s < S, t < T (A from n = 1).
class CoefficientField {
 public:
  explicit CoefficientField(const TauGrid& grid);

  const LatticeConfig& config() const noexcept { return config_; }
  /// nullptr outside the field.
  const Rational* A(long n, long s, long t) const { return get(a_, n, s, t); }
  const Rational* B(long n, long s, long t) const { return get(b_, n, s, t); }
  const Rational* C(long n, long s, long t) const { return get(c_, n, s, t); }
  const Rational* D(long n, long s, long t) const { return get(d_, n, s, t); }

 private:
  const Rational* get(const std::vector<std::optional<Rational>>& v, long n, long s, long t) const;

  LatticeConfig config_;
  std::vector<std::optional<Rational>> a_, b_, c_, d_;
};

/// Throws Error(SingularConfiguration) when a tau denominator vanishes.
CoefficientField coefficient_field(const TauGrid& grid);

/// Row-major 2x2 matrix.
using Mat2 = std::array<Rational, 4>;

Mat2 operator*(const Mat2& a, const Mat2& b);

/// Antidiagonal A, B, C, D; an entry is absent where a sigma denominator
/// vanishes (sigma_0^{0,0} = 0 always).
class MatrixCoefficientField {
 public:
  explicit MatrixCoefficientField(const TauGrid& grid);

  const LatticeConfig& config() const noexcept { return config_; }
  const Mat2* A(long n, long s, long t) const { return get(a_, n, s, t); }
  const Mat2* B(long n, long s, long t) const { return get(b_, n, s, t); }
  const Mat2* C(long n, long s, long t) const { return get(c_, n, s, t); }
  const Mat2* D(long n, long s, long t) const { return get(d_, n, s, t); }
  std::size_t absent() const noexcept { return absent_; }

 private:
  const Mat2* get(const std::vector<std::optional<Mat2>>& v, long n, long s, long t) const;

  LatticeConfig config_;
  std::vector<std::optional<Mat2>> a_, b_, c_, d_;
  std::size_t absent_ = 0;
};

MatrixCoefficientField matrix_coefficient_field(const TauGrid& grid);

/// Both bilinear tau/tauhat relations as polynomial identities in z.
Report verify_dckp(const TauGrid& grid);

/// Both contiguous relations of q_2n = tauhat_n / tau_n at every sample.
/// Throws Error(InvalidArgument) unless the samples are distinct and at
/// least 2N+3.
Report verify_slax(const TauGrid& grid, std::span<const Rational> samples);

/// The five equations of the scalar nonlinear system wherever all entries exist.
Report verify_dpfl(const CoefficientField& field);

/// The four bilinear tau/sigma relations as polynomial identities in z.
Report verify_edckp(const TauGrid& grid);

/// The vector Lax pair for Phi_n = (tauhat_n / sigma_n, sigmahat_n / tau_n),
/// plus skew-orthogonality and monicity of the phi family at each site.
/// Throws Error(InvalidArgument) unless the samples are distinct and at
/// least 2N+4.
Report verify_edlax(const TauGrid& grid, std::span<const Rational> samples);

/// The matrix nonlinear system; each multiplicative equation is evaluated in
/// its printed and scalar-pattern index variants, each with the right-hand
/// product in printed and reversed order.
Report verify_edpfl(const MatrixCoefficientField& field);

/// 2N+4 deterministic samples avoiding mu and lambda; enough for both Lax checks.
std::vector<Rational> lattice_samples(const LatticeConfig& config);

}  // namespace skewflow
