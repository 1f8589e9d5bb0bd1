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

#include "skewflow/transforms.hpp"

#include <string>
#include <utility>

#include "skewflow/error.hpp"

namespace skewflow {

namespace {

std::string idx(std::size_t n) { return std::to_string(n); }

void require_family(const SOPFamily& family) {
  if (family.polys.size() != 2 * family.pairs + 2 || family.norms.size() != family.pairs + 1) {
    raise(ErrorKind::InvalidArgument, "family must hold 2N+2 polynomials and N+1 norms");
  }
}

}  // namespace

ChristoffelResult christoffel(const SOPFamily& family, const SkewMoments& moments,
                              const Rational& lambda) {
  require_family(family);
  const std::size_t N = family.pairs;
  if (moments.max_index() < 2 * N + 2) {
    raise(ErrorKind::DegreeBudgetExceeded, "Christoffel step on " + idx(N + 1) +
                                               " pairs needs max_index >= " + idx(2 * N + 2));
  }

  ChristoffelData data;
  data.lambda = lambda;
  data.q_next_even = sop_even(moments, N + 1);

  std::vector<Rational> even_at(N + 2), odd_at(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    even_at[n] = family.even(n)(lambda);
    odd_at[n] = family.odd(n)(lambda);
    if (sgn(even_at[n]) == 0) {
      raise(ErrorKind::SingularConfiguration,
            "q_" + idx(2 * n) + "(" + format_rational(lambda) + ") = 0");
    }
  }
  even_at[N + 1] = data.q_next_even(lambda);

  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<Rational> a(n + 1), b(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational ratio = family.norms[n] / family.norms[k] / even_at[n];
      a[k] = -ratio * odd_at[k];
      b[k] = ratio * even_at[k];
    }
    data.A.push_back(std::move(a));
    data.B.push_back(std::move(b));
    data.C.push_back(-even_at[n + 1] / even_at[n]);
  }

  SkewMoments shifted = shift(moments, lambda);
  SOPFamily image;
  image.pairs = N;
  image.gauge = kGaugeChristoffel;
  auto divide = [&](const Polynomial& numerator, std::size_t degree) {
    if (sgn(numerator(lambda)) != 0) {
      raise(ErrorKind::NotDivisible, "numerator of q*_" + idx(degree) + " does not vanish at " +
                                         format_rational(lambda));
    }
    return div_by_linear(numerator, lambda);
  };
  for (std::size_t n = 0; n <= N; ++n) {
    Polynomial even = family.odd(n);
    for (std::size_t k = 0; k <= n; ++k) even += family.even(k) * data.A[n][k];
    for (std::size_t k = 0; k < n; ++k) even += family.odd(k) * data.B[n][k];
    image.polys.push_back(divide(even, 2 * n));

    const Polynomial& next_even = n < N ? family.even(n + 1) : data.q_next_even;
    image.polys.push_back(divide(next_even + family.even(n) * data.C[n], 2 * n + 1));

    Rational r = skew_product(shifted, image.even(n), image.odd(n));
    if (sgn(r) == 0) raise(ErrorKind::SingularConfiguration, "r*_" + idx(n) + " vanishes");
    image.norms.push_back(std::move(r));
  }
  return {std::move(image), std::move(shifted), std::move(data)};
}

Report verify_christoffel(const SOPFamily& family, const SkewMoments& moments,
                          const Rational& lambda) {
  Report report;
  report.suite = "christoffel";
  const ChristoffelResult result = christoffel(family, moments, lambda);
  Report image = verify_skew_orthogonality(result.family, result.moments);
  for (auto& c : image.checks) c.id = "image:" + c.id;
  report.absorb(image);
  report.check("image:q0=1", result.family.even(0) == Polynomial({1}));
  for (std::size_t n = 0; n <= family.pairs; ++n) {
    const Polynomial& next = n < family.pairs ? family.even(n + 1) : result.data.q_next_even;
    const Rational expected = next(lambda) / family.even(n)(lambda) * family.norms[n];
    const Rational& actual = result.family.norms[n];
    report.check("norm:r*" + idx(n), actual == expected,
                 "skew product " + format_rational(actual) + ", ratio formula " +
                     format_rational(expected));
  }
  return report;
}

GeronimusData geronimus_coeffs(const SOPFamily& next, const SOPFamily& family,
                               const SkewMoments& moments, const Rational& lambda) {
  require_family(next);
  require_family(family);
  if (next.pairs != family.pairs) {
    raise(ErrorKind::InvalidArgument, "Geronimus coefficients need families of equal length");
  }
  const std::size_t N = family.pairs;
  const Polynomial factor = Polynomial::linear_factor(lambda);
  auto product = [&](const Polynomial& f, const Polynomial& g) -> Rational {
    return skew_product(moments, factor * f, factor * g);
  };
  for (std::size_t k = 0; k <= N; ++k) {
    if (sgn(next.norms[k]) == 0) {
      raise(ErrorKind::SingularConfiguration, "r_" + idx(k) + "^{t+1} vanishes");
    }
  }

  GeronimusData data;
  data.lambda = lambda;
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<Rational> alpha(n), beta(n), gamma(n + 1), epsilon(n);
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational& r = next.norms[k];
      gamma[k] = product(family.odd(n), next.odd(k)) / r;
      if (k == n) break;
      alpha[k] = product(family.even(n), next.odd(k)) / r;
      beta[k] = product(next.even(k), family.even(n)) / r;
      epsilon[k] = product(next.even(k), family.odd(n)) / r;
    }
    data.alpha.push_back(std::move(alpha));
    data.beta.push_back(std::move(beta));
    data.gamma.push_back(std::move(gamma));
    data.epsilon.push_back(std::move(epsilon));
  }
  return data;
}

Report verify_geronimus(const SOPFamily& next, const SOPFamily& family, const SkewMoments& moments,
                        const Rational& lambda) {
  Report report;
  report.suite = "geronimus";
  const GeronimusData data = geronimus_coeffs(next, family, moments, lambda);
  const SkewMoments shifted = shift(moments, lambda);
  auto cross = [&](const std::string& name, std::size_t n, std::size_t k, const Rational& stored,
                   const Polynomial& f, const Polynomial& g) {
    const Rational direct = skew_product(shifted, f, g) / next.norms[k];
    report.check("coeff:" + name + "[" + idx(n) + "][" + idx(k) + "]", direct == stored,
                 "multiplied " + format_rational(stored) + ", shifted " + format_rational(direct));
  };
  for (std::size_t n = 0; n <= family.pairs; ++n) {
    Polynomial even = next.even(n);
    Polynomial odd = next.odd(n);
    for (std::size_t k = 0; k <= n; ++k) {
      cross("gamma", n, k, data.gamma[n][k], family.odd(n), next.odd(k));
      odd += next.even(k) * data.gamma[n][k];
      if (k == n) break;
      cross("alpha", n, k, data.alpha[n][k], family.even(n), next.odd(k));
      cross("beta", n, k, data.beta[n][k], next.even(k), family.even(n));
      cross("epsilon", n, k, data.epsilon[n][k], next.even(k), family.odd(n));
      even += next.even(k) * data.alpha[n][k] + next.odd(k) * data.beta[n][k];
      odd += next.odd(k) * data.epsilon[n][k];
    }
    report.check("reconstruct:q" + idx(2 * n), even == family.even(n), "exact coefficient comparison");
    report.check("reconstruct:q" + idx(2 * n + 1), odd == family.odd(n),
                 "exact coefficient comparison");
  }
  return report;
}

BandMatrix::BandMatrix(Shape shape, std::size_t size)
    : shape_(shape), size_(size), entries_(size * size) {}

bool BandMatrix::structure_ok() const {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i; j < size_; ++j) {
      const Rational& v = (*this)(i, j);
      if (shape_ == Shape::UnitLower) {
        if (j == i ? v != 1 : sgn(v) != 0) return false;
      } else if (j == i + 1) {
        if (v != 1) return false;
      } else if (j > i + 1 && sgn(v) != 0) {
        return false;
      }
    }
  }
  return true;
}

BandMatrix operator*(const BandMatrix& a, const BandMatrix& b) {
  if (a.size_ != b.size_) raise(ErrorKind::InvalidArgument, "matrix sizes differ");
  BandMatrix out(a.shape_, a.size_);
  for (std::size_t i = 0; i < a.size_; ++i) {
    for (std::size_t k = 0; k < a.size_; ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < a.size_; ++j) {
        if (sgn(b(k, j)) != 0) out.entries_[i * a.size_ + j] += x * b(k, j);
      }
    }
  }
  return out;
}

ChristoffelChain build_chain(const SkewMoments& moments, std::size_t pairs, const Rational& lambda,
                             std::size_t length) {
  if (length == 0) raise(ErrorKind::InvalidArgument, "chain length must be positive");
  if (moments.max_index() < 2 * pairs + length) {
    raise(ErrorKind::DegreeBudgetExceeded, "chain of " + idx(length) + " families with N = " +
                                               idx(pairs) + " needs max_index >= " +
                                               idx(2 * pairs + length));
  }
  ChristoffelChain chain;
  chain.lambda = lambda;
  chain.moments.push_back(moments);
  chain.families.push_back(build_family(moments, pairs));
  for (std::size_t t = 0; t + 1 < length; ++t) {
    ChristoffelResult step = christoffel(chain.families[t], chain.moments[t], lambda);
    chain.families.push_back(std::move(step.family));
    chain.moments.push_back(std::move(step.moments));
  }
  return chain;
}

std::vector<LaxPair> build_lax_pairs(const ChristoffelChain& chain, std::size_t size) {
  if (chain.families.size() < 2) {
    raise(ErrorKind::InvalidArgument, "Lax pairs need a chain of at least two families");
  }
  const std::size_t N = chain.families.front().pairs;
  if (size > 2 * N + 2) {
    raise(ErrorKind::TruncationTooLarge,
          "truncation " + idx(size) + " exceeds the verifiable window " + idx(2 * N + 2));
  }
  std::vector<LaxPair> pairs;
  for (std::size_t t = 0; t + 1 < chain.families.size(); ++t) {
    const SOPFamily& family = chain.families[t];
    const ChristoffelData c = christoffel(family, chain.moments[t], chain.lambda).data;
    const GeronimusData g =
        geronimus_coeffs(chain.families[t + 1], family, chain.moments[t], chain.lambda);

    BandMatrix L(BandMatrix::Shape::Hessenberg, size);
    BandMatrix R(BandMatrix::Shape::UnitLower, size);
    auto put = [size](BandMatrix& m, std::size_t i, std::size_t j, const Rational& v) {
      if (i < size && j < size) m.set(i, j, v);
    };
    for (std::size_t n = 0; n <= N; ++n) {
      const std::size_t e = 2 * n, o = 2 * n + 1;
      for (std::size_t k = 0; k <= n; ++k) {
        put(L, e, 2 * k, c.A[n][k]);
        put(L, e, 2 * k + 1, c.B[n][k]);
        put(R, o, 2 * k, g.gamma[n][k]);
      }
      put(L, o, e, c.C[n]);
      put(L, o, e + 2, 1);
      for (std::size_t k = 0; k < n; ++k) {
        put(R, e, 2 * k, g.alpha[n][k]);
        put(R, e, 2 * k + 1, g.beta[n][k]);
        put(R, o, 2 * k + 1, g.epsilon[n][k]);
      }
      put(R, e, e, 1);
      put(R, o, o, 1);
    }
    pairs.push_back({std::move(L), std::move(R)});
  }
  return pairs;
}

Report verify_lax_rows(const ChristoffelChain& chain, const std::vector<LaxPair>& pairs) {
  Report report;
  report.suite = "lax-rows";
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const LaxPair& pair = pairs[t];
    const std::size_t size = pair.L.size();
    const SOPFamily& now = chain.families[t];
    const SOPFamily& next = chain.families[t + 1];
    std::vector<Polynomial> phi = now.polys;
    phi.push_back(sop_even(chain.moments[t], now.pairs + 1));
    const std::string step = "t" + idx(t);

    report.check(step + ":L-structure", pair.L.structure_ok());
    report.check(step + ":R-structure", pair.R.structure_ok());

    const auto samples = sample_points(size + 2);
    for (std::size_t i = 0; i < size; ++i) {
      bool l_ok = true, r_ok = true;
      std::string l_detail = "exact at " + idx(samples.size()) + " samples", r_detail = l_detail;
      for (const Rational& z : samples) {
        Rational lhs = (z - chain.lambda) * next.polys[i](z);
        Rational rhs = i + 1 == size ? phi[size](z) : Rational(0);
        for (std::size_t j = 0; j < size; ++j) {
          if (sgn(pair.L(i, j)) != 0) rhs += pair.L(i, j) * phi[j](z);
        }
        if (l_ok && lhs != rhs) {
          l_ok = false;
          l_detail = "z = " + format_rational(z) + ": " + format_rational(lhs) +
                     " != " + format_rational(rhs);
        }
        lhs = now.polys[i](z);
        rhs = 0;
        for (std::size_t j = 0; j <= i; ++j) {
          if (sgn(pair.R(i, j)) != 0) rhs += pair.R(i, j) * next.polys[j](z);
        }
        if (r_ok && lhs != rhs) {
          r_ok = false;
          r_detail = "z = " + format_rational(z) + ": " + format_rational(lhs) +
                     " != " + format_rational(rhs);
        }
      }
      report.check(step + ":L-row" + idx(i), l_ok, l_detail);
      report.check(step + ":R-row" + idx(i), r_ok, r_detail);
    }
  }
  return report;
}

Report verify_dlax(const BandMatrix& L, const BandMatrix& R, const BandMatrix& L_next,
                   const BandMatrix& R_next) {
  Report report;
  report.suite = "dlax";
  const std::size_t size = L.size();
  if (R.size() != size || L_next.size() != size || R_next.size() != size || size < 3) {
    report.check("sizes", false, "all four matrices need one size >= 3");
    return report;
  }
  const BandMatrix left = L * R;
  const BandMatrix right = R_next * L_next;
  const std::size_t window = size - 2;
  for (std::size_t i = 0; i < window; ++i) {
    for (std::size_t j = 0; j < window; ++j) {
      const bool equal = left(i, j) == right(i, j);
      report.check("LR=RL[" + idx(i) + "][" + idx(j) + "]", equal,
                   equal ? format_rational(left(i, j))
                         : format_rational(left(i, j)) + " != " + format_rational(right(i, j)));
    }
  }
  return report;
}

Polynomial kernel(const SOPFamily& family, std::size_t N, const Rational& y) {
  if (N > family.pairs || family.polys.empty()) {
    raise(ErrorKind::InvalidArgument, "kernel order exceeds the family");
  }
  Polynomial sum;
  for (std::size_t k = 0; k <= N; ++k) {
    const Rational inv = 1 / family.norms[k];
    sum += family.odd(k) * Rational(family.even(k)(y) * inv);
    sum -= family.even(k) * Rational(family.odd(k)(y) * inv);
  }
  return sum;
}

Report verify_factorization(const SOPFamily& family, const SkewMoments& moments, std::size_t N,
                            const Rational& y) {
  Report report;
  report.suite = "kernel";
  const Polynomial I = kernel(family, N, y);
  const ChristoffelResult image = christoffel(truncate(family, N), moments, y);
  const Polynomial& q = family.even(N);
  const Polynomial& q_star = image.family.even(N);
  const Polynomial x_minus_y = Polynomial::linear_factor(y);
  const Rational inv_r = 1 / family.norms[N];

  const Polynomial printed = x_minus_y * q * q_star * inv_r;
  const Polynomial derived = x_minus_y * q_star * Rational(q(y) * inv_r);
  const bool a = printed == I, b = derived == I;
  report.verdict("factorization:(x-y)q_2N(x)q*_2N(x)/r_N", a,
                 a ? "matches the kernel sum" : "differs from the kernel sum");
  report.verdict("factorization:(x-y)q*_2N(x)q_2N(y)/r_N", b,
                 b ? "matches the kernel sum" : "differs from the kernel sum");
  report.check("factorization:exactly-one-form", a != b,
               std::string("printed ") + (a ? "matches" : "differs") + ", derived " +
                   (b ? "matches" : "differs"));
  report.check("kernel:diagonal", sgn(I(y)) == 0, "I_N(y, y) = " + format_rational(I(y)));

  const Rational other = y + 1;
  const Rational forward = kernel(family, N, other)(y);
  const Rational backward = I(other);
  report.check("kernel:antisymmetry", forward == -backward,
               "I(y, y+1) = " + format_rational(forward) + ", I(y+1, y) = " +
                   format_rational(backward));
  report.check("kernel:degree", I.degree() <= static_cast<long>(2 * N + 1),
               "deg = " + std::to_string(I.degree()));
  return report;
}

}  // namespace skewflow
