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
#include <vector>

#include "skewflow/moments.hpp"
#include "skewflow/polynomial.hpp"
#include "skewflow/rational.hpp"
#include "skewflow/report.hpp"
#include "skewflow/sops.hpp"

namespace skewflow {

/// Coefficients of one skew-Christoffel step, in the layout of the L matrix:
///   (z - lambda) q*_2n     = q_{2n+1} + sum_{k<=n} A[n][k] q_2k + sum_{k<n} B[n][k] q_{2k+1}
///   (z - lambda) q*_{2n+1} = q_{2n+2} + C[n] q_2n
/// with A[n][k] = -(r_n/r_k) q_{2k+1}(lambda)/q_2n(lambda),
///      B[n][k] =  (r_n/r_k) q_2k(lambda)/q_2n(lambda)  (so B[n][n] = 1),
///      C[n]    = -q_{2n+2}(lambda)/q_2n(lambda).
struct ChristoffelData {
  Rational lambda;
  std::vector<std::vector<Rational>> A;
  std::vector<std::vector<Rational>> B;
  std::vector<Rational> C;
  /// q_{2N+2} of the source table, needed by the last odd image and row 2N+1 of L.
  Polynomial q_next_even;
};

struct ChristoffelResult {
  SOPFamily family;
  SkewMoments moments;
  ChristoffelData data;
};

/// SOPs of <(z-lambda) . | (z-lambda) . > from those of < . | . >, odd images
/// with alpha_n = 0. Needs max_index >= 2N+2. Throws
/// Error(SingularConfiguration) when some q_2n(lambda) or r*_n vanishes.
ChristoffelResult christoffel(const SOPFamily& family, const SkewMoments& moments,
                              const Rational& lambda);

/// Image orthogonality against shift(moments, lambda) and
/// r*_n = (q_{2n+2}(lambda)/q_2n(lambda)) r_n.
Report verify_christoffel(const SOPFamily& family, const SkewMoments& moments,
                          const Rational& lambda);

/// Inverse contiguous relations
///   q_2n^t     = q_2n^{t+1}     + sum_{k<n} alpha[n][k] q_2k^{t+1} + sum_{k<n} beta[n][k] q_{2k+1}^{t+1}
///   q_{2n+1}^t = q_{2n+1}^{t+1} + sum_{k<=n} gamma[n][k] q_2k^{t+1} + sum_{k<n} epsilon[n][k] q_{2k+1}^{t+1}
struct GeronimusData {
  Rational lambda;
  std::vector<std::vector<Rational>> alpha;
  std::vector<std::vector<Rational>> beta;
  std::vector<std::vector<Rational>> gamma;
  std::vector<std::vector<Rational>> epsilon;
};

/// Coefficients as (1/r_k^{t+1}) times skew products of (z-lambda)-multiplied
/// polynomials on `moments` (the table of `family`).
GeronimusData geronimus_coeffs(const SOPFamily& next, const SOPFamily& family,
                               const SkewMoments& moments, const Rational& lambda);

/// Reconstruction of every q_n^t, plus agreement of the coefficients with
/// the same products taken on shift(moments, lambda).
Report verify_geronimus(const SOPFamily& next, const SOPFamily& family, const SkewMoments& moments,
                        const Rational& lambda);

/// Square truncation of a banded Lax matrix, stored densely.
class BandMatrix {
 public:
  enum class Shape { Hessenberg, UnitLower };

  BandMatrix(Shape shape, std::size_t size);

  Shape shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return size_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& value) { entries_[i * size_ + j] = value; }

  /// Hessenberg: zero above the superdiagonal, superdiagonal exactly 1.
  /// UnitLower: unit diagonal, zero above it.
  bool structure_ok() const;

  friend BandMatrix operator*(const BandMatrix& a, const BandMatrix& b);
  friend bool operator==(const BandMatrix&, const BandMatrix&) = default;

 private:
  Shape shape_;
  std::size_t size_;
  std::vector<Rational> entries_;
};

/// Iterated skew-Christoffel transformation at fixed lambda, alpha_n^t = 0.
struct ChristoffelChain {
  Rational lambda;
  std::vector<SkewMoments> moments;
  std::vector<SOPFamily> families;
};

/// `length` families starting from the Pfaffian family of `moments`. Needs
/// max_index >= 2N + length.
ChristoffelChain build_chain(const SkewMoments& moments, std::size_t pairs, const Rational& lambda,
                             std::size_t length);

struct LaxPair {
  BandMatrix L;
  BandMatrix R;
};

/// (z - lambda) Phi^{t+1} = L^t Phi^t and Phi^t = R^t Phi^{t+1} for
/// t = 0 .. length-2, truncated to `size`. Throws Error(TruncationTooLarge)
/// when size > 2N+2.
std::vector<LaxPair> build_lax_pairs(const ChristoffelChain& chain, std::size_t size);

/// Both row identities of every pair, sampled at size+2 points.
Report verify_lax_rows(const ChristoffelChain& chain, const std::vector<LaxPair>& pairs);

/// L^t R^t = R^{t+1} L^{t+1} on the leading (size-2) x (size-2) window.
Report verify_dlax(const BandMatrix& L, const BandMatrix& R, const BandMatrix& L_next,
                   const BandMatrix& R_next);

/// I_N(x, y) as a polynomial in x.
Polynomial kernel(const SOPFamily& family, std::size_t N, const Rational& y);

/// Compares I_N(x, y) with (a) (x-y) q_2N(x) q*_2N(x) / r_N and
/// (b) (x-y) q*_2N(x) q_2N(y) / r_N, q* the Christoffel image at lambda = y.
/// Passes when exactly one form matches; verdicts say which.
Report verify_factorization(const SOPFamily& family, const SkewMoments& moments, std::size_t N,
                            const Rational& y);

}  // namespace skewflow
