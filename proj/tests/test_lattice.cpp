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

#include <cstdlib>
#include <optional>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "skewflow/error.hpp"
#include "skewflow/lattice.hpp"

using namespace skewflow;

namespace {

LatticeConfig config(Rational mu, Rational lambda, std::size_t pairs, std::size_t s, std::size_t t) {
  LatticeConfig c;
  c.mu = mu;
  c.lambda = lambda;
  c.pairs = pairs;
  c.s_extent = s;
  c.t_extent = t;
  return c;
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) return c.id + ": " + c.detail;
  }
  return "";
}

const Verdict* find_verdict(const Report& r, const std::string& id) {
  for (const auto& v : r.verdicts) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

void all_suites_pass(const TauGrid& grid) {
  const auto samples = lattice_samples(grid.config());
  const Report reports[] = {verify_crosscheck(grid),
                            verify_dckp(grid),
                            verify_slax(grid, samples),
                            verify_dpfl(coefficient_field(grid)),
                            verify_edckp(grid),
                            verify_edlax(grid, samples),
                            verify_edpfl(matrix_coefficient_field(grid))};
  for (const auto& r : reports) {
    INFO(r.suite, " ", first_failure(r));
    CHECK(!r.checks.empty());
    CHECK(r.passed());
  }
}

}  // namespace

TEST_CASE("Grid values on the symplectic instance") {
  const SkewMoments m = oracle::symplectic_test_moments(12);
  const TauGrid g = build_grid(m, config(Rational(1, 2), 3, 1, 1, 1));
  CHECK(g.levels() == 3);
  CHECK(g.tau(0, 0, 0) == 1);
  CHECK(g.tau(1, 0, 0) == m(0, 1));
  CHECK(g.sigma(0, 0, 0) == 0);
  CHECK(g.sigma(0, 1, 0) == Rational(1, 2));
  CHECK(g.sigma(0, 1, 1) == Rational(7, 2));
  CHECK(g.sigma(1, 0, 0) == 6);
  CHECK(g.tau_hat(0, 0, 0) == Polynomial({1}));
  CHECK(g.table(1, 0) == shift(m, Rational(1, 2)));
  CHECK(g.table(1, 1) == shift(shift(m, Rational(1, 2)), 3));
  CHECK(g.flat(1, 1, 0) == 6);
}

TEST_CASE("Grid preconditions") {
  const SkewMoments m = oracle::symplectic_test_moments(12);
  auto kind_of = [&](const LatticeConfig& c) -> std::optional<ErrorKind> {
    try {
      build_grid(m, c);
    } catch (const Error& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  CHECK(kind_of(config(2, 2, 1, 1, 1)) == ErrorKind::InvalidArgument);
  CHECK(kind_of(config(1, 2, 4, 1, 1)) == ErrorKind::DegreeBudgetExceeded);
  // Rank 4: tau_3 vanishes.
  CHECK(kind_of(config(1, 3, 2, 1, 1)) == ErrorKind::SingularConfiguration);
}

TEST_CASE("Crosscheck and lattice suites on the symplectic instance") {
  const TauGrid g = build_grid(oracle::symplectic_test_moments(12), config(Rational(1, 2), 3, 1, 2, 2));
  all_suites_pass(g);
  const Report x = verify_crosscheck(g);
  const Verdict* tau11 = find_verdict(x, "printed:tau^{s+1,t+1}=(lambda-mu)^-1 Pf(..,mu,lambda)");
  REQUIRE(tau11);
  CHECK(!tau11->holds);
}

TEST_CASE("Lattice suites on random tables") {
  for (std::uint64_t seed : {42u, 7u, 1234u}) {
    INFO("seed ", seed);
    const LatticeConfig c = config(2, Rational(-1, 3), 2, 2, 2);
    const TauGrid g = build_grid(from_random(seed, c.required_max_index(), 9), c);
    all_suites_pass(g);
  }
}

TEST_CASE("Orthogonal ensemble grid") {
  const SkewMoments m = oracle::orthogonal_test_moments(12);
  const TauGrid g = build_grid(m, config(Rational(5, 2), -2, 1, 2, 2));
  all_suites_pass(g);
}

TEST_CASE("Printed-form verdicts") {
  const LatticeConfig c = config(2, Rational(-1, 3), 2, 2, 2);
  const TauGrid g = build_grid(from_random(42, c.required_max_index(), 9), c);
  const Report d = verify_dckp(g);
  const Verdict* v = find_verdict(d, "printed:dckp2 without (lambda-mu) on the tau_{n+1} tauhat_{n-1} term");
  REQUIRE(v);
  CHECK(!v->holds);
  const Report s = verify_slax(g, lattice_samples(c));
  for (const char* id : {"printed:slax1 right-hand side sign", "printed:slax2 right-hand side sign"}) {
    v = find_verdict(s, id);
    REQUIRE(v);
    CHECK(!v->holds);
  }
  const Report e = verify_edlax(g, lattice_samples(c));
  v = find_verdict(e, "phi_2n monic at s=t=0 (n>=1)");
  REQUIRE(v);
  CHECK(!v->holds);
  const Report p = verify_edpfl(matrix_coefficient_field(g));
  for (const char* eq : {"AC", "AD", "BD", "BC"}) {
    INFO(eq);
    v = find_verdict(p, std::string("edpfl-") + eq + ":pattern,reversed-order");
    REQUIRE(v);
    CHECK(v->holds);
  }
  v = find_verdict(p, "edpfl-AC:printed,same-order");
  REQUIRE(v);
  CHECK(!v->holds);
}

TEST_CASE("slax at n = 0 reduces to B_0 = mu - lambda") {
  const LatticeConfig c = config(Rational(7, 5), Rational(-1, 3), 1, 1, 1);
  const TauGrid g = build_grid(from_random(42, c.required_max_index(), 9), c);
  const CoefficientField f = coefficient_field(g);
  CHECK(*f.B(0, 0, 0) == c.mu - c.lambda);
  CHECK(f.A(0, 0, 0) == nullptr);
  CHECK(f.B(2, 0, 0) == nullptr);
}

TEST_CASE("Degenerate sigma = tau reproduces the scalar lattice") {
  const LatticeConfig c = config(2, Rational(-1, 3), 2, 2, 2);
  const TauGrid g = degenerate_sigma(build_grid(from_random(42, c.required_max_index(), 9), c));
  CHECK(verify_edckp(g).passed());
  const CoefficientField f = coefficient_field(g);
  const MatrixCoefficientField mf = matrix_coefficient_field(g);
  CHECK(mf.absent() == 0);
  // Matrix coefficients carry (lambda - mu) where the scalar ones carry (mu - lambda).
  const Rational b = -*f.B(1, 0, 0);
  CHECK(*mf.B(1, 0, 0) == Mat2{0, b, b, 0});
  const Report p = verify_edpfl(mf);
  CHECK(p.passed());
  const Verdict* v = find_verdict(p, "edpfl-BC:pattern,same-order");
  REQUIRE(v);
  CHECK(v->holds);
}

TEST_CASE("Scale invariance") {
  const LatticeConfig c = config(2, Rational(-1, 3), 1, 2, 2);
  const SkewMoments m = from_random(5, c.required_max_index(), 9);
  all_suites_pass(build_grid(m.scaled(Rational(-7, 3)), c));
}

TEST_CASE("Fault injection is localized") {
  const LatticeConfig c = config(2, Rational(-1, 3), 2, 1, 1);
  const TauGrid g = build_grid(from_random(42, c.required_max_index(), 9), c);
  std::vector<Rational> tau(g.tau_values().begin(), g.tau_values().end());
  tau[g.flat(2, 1, 1)] += 1;
  const TauGrid bad(c, g.base(), tau, {g.sigma_values().begin(), g.sigma_values().end()},
                    {g.tau_hat_values().begin(), g.tau_hat_values().end()},
                    {g.sigma_hat_values().begin(), g.sigma_hat_values().end()});
  const Report x = verify_crosscheck(bad);
  CHECK(!x.passed());
  for (const auto& chk : x.checks) {
    if (!chk.passed) CHECK(chk.id.find("@n2,s0,t0") != std::string::npos);
  }
  const Report d = verify_dckp(bad);
  CHECK(!d.passed());
}

TEST_CASE("Sample validation") {
  const LatticeConfig c = config(Rational(7, 5), Rational(-1, 3), 1, 1, 1);
  const TauGrid g = build_grid(from_random(42, c.required_max_index(), 9), c);
  const Rational few[] = {0, 1, 5};
  CHECK_THROWS_AS(verify_slax(g, few), Error);
  const Rational dup[] = {0, 1, 5, 5, 7};
  CHECK_THROWS_AS(verify_slax(g, dup), Error);
  const auto samples = lattice_samples(c);
  CHECK(samples.size() == 6);
  for (const auto& z : samples) CHECK((z != c.mu && z != c.lambda));
}

TEST_CASE("Serial and threaded builds agree") {
  const LatticeConfig c = config(Rational(1, 2), Rational(-1, 3), 2, 2, 2);
  const SkewMoments m = from_random(11, c.required_max_index(), 9);
  setenv("SKEWFLOW_THREADS", "1", 1);
  const TauGrid serial = build_grid(m, c);
  const Report serial_report = verify_crosscheck(serial);
  setenv("SKEWFLOW_THREADS", "8", 1);
  const TauGrid threaded = build_grid(m, c);
  const Report threaded_report = verify_crosscheck(threaded);
  unsetenv("SKEWFLOW_THREADS");
  CHECK(serial == threaded);
  REQUIRE(serial_report.checks.size() == threaded_report.checks.size());
  for (std::size_t i = 0; i < serial_report.checks.size(); ++i) {
    CHECK(serial_report.checks[i].id == threaded_report.checks[i].id);
  }
}
