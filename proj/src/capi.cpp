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

#include "skewflow/skewflow.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "skewflow/error.hpp"
#include "skewflow/io.hpp"
#include "skewflow/lattice.hpp"
#include "skewflow/moments.hpp"
#include "skewflow/sops.hpp"
#include "skewflow/transforms.hpp"

using namespace skewflow;

struct sf_moments {
  SkewMoments value;
};
struct sf_family {
  SOPFamily value;
};
struct sf_chain {
  ChristoffelChain value;
};
struct sf_grid {
  TauGrid value;
};
struct sf_report {
  Report value;
};

namespace {

thread_local std::string last_error;

sf_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotDivisible: return SF_ERR_NOT_DIVISIBLE;
    case ErrorKind::IndexOutOfBudget: return SF_ERR_INDEX_OUT_OF_BUDGET;
    case ErrorKind::DegreeBudgetExceeded: return SF_ERR_DEGREE_BUDGET;
    case ErrorKind::SingularConfiguration: return SF_ERR_SINGULAR;
    case ErrorKind::TruncationTooLarge: return SF_ERR_TRUNCATION;
    case ErrorKind::InvalidArgument: return SF_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return SF_ERR_PARSE;
  }
  return SF_ERR_INTERNAL;
}

// Runs body, translating every exception into a status and message.
template <class Body>
sf_status guard(Body&& body) {
  try {
    body();
    last_error.clear();
    return SF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return SF_ERR_INTERNAL;
}

template <class... P>
bool sf_all(const P*... pointers) {
  return ((pointers != nullptr) && ...);
}

#define SF_REQUIRE(...)             \
  do {                              \
    if (!sf_all(__VA_ARGS__)) {     \
      last_error = "null argument"; \
      return SF_ERR_NULL_ARGUMENT;  \
    }                               \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Rational rational_arg(const char* text) {
  if (!text) raise(ErrorKind::InvalidArgument, "null rational argument");
  return parse_rational(text);
}

Json family_summary(const SOPFamily& f) {
  Json j = Json::object();
  j["pairs"] = f.pairs;
  j["gauge"] = f.gauge;
  return j;
}

Json grid_summary(const TauGrid& g) {
  Json j = grid_to_json(g);
  j.erase("sites");
  j["moments"] = provenance_to_json(g.base().provenance());
  return j;
}

// Runs a suite, stamps the inputs and wall-clock time, hands back a handle.
template <class Suite>
void run_suite(Json instance, sf_report** out, Suite&& suite) {
  const auto start = std::chrono::steady_clock::now();
  Report r = suite();
  const auto stop = std::chrono::steady_clock::now();
  r.instance = std::move(instance);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  *out = new sf_report{std::move(r)};
}

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.1.0"; }

const char* sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_ERR_NOT_DIVISIBLE: return "not-divisible";
    case SF_ERR_INDEX_OUT_OF_BUDGET: return "index-out-of-budget";
    case SF_ERR_DEGREE_BUDGET: return "degree-budget-exceeded";
    case SF_ERR_SINGULAR: return "singular-configuration";
    case SF_ERR_TRUNCATION: return "truncation-too-large";
    case SF_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SF_ERR_PARSE: return "parse";
    case SF_ERR_NULL_ARGUMENT: return "null-argument";
    case SF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* sf_last_error(void) { return last_error.c_str(); }

void sf_string_free(char* text) { std::free(text); }

sf_status sf_moments_random(uint64_t seed, size_t max_index, unsigned bound, sf_moments** out) {
  SF_REQUIRE(out);
  return guard([&] { *out = new sf_moments{from_random(seed, max_index, bound)}; });
}

sf_status sf_moments_discrete(const char* kind, const char* const* nodes, const char* const* weights,
                              size_t count, size_t max_index, sf_moments** out) {
  SF_REQUIRE(kind, out);
  if (count > 0) SF_REQUIRE(nodes, weights);
  return guard([&] {
    std::vector<Rational> x, w;
    for (size_t k = 0; k < count; ++k) {
      x.push_back(rational_arg(nodes[k]));
      w.push_back(rational_arg(weights[k]));
    }
    const DiscreteMeasure measure(std::move(x), std::move(w));
    const std::string k = kind;
    if (k == "orthogonal") {
      *out = new sf_moments{from_discrete_orthogonal(measure, max_index)};
    } else if (k == "symplectic") {
      *out = new sf_moments{from_discrete_symplectic(measure, max_index)};
    } else {
      raise(ErrorKind::InvalidArgument, "unknown ensemble '" + k + "'");
    }
  });
}

sf_status sf_moments_shift(const sf_moments* m, const char* c, sf_moments** out) {
  SF_REQUIRE(m, c, out);
  return guard([&] { *out = new sf_moments{shift(m->value, rational_arg(c))}; });
}

sf_status sf_moments_scale(const sf_moments* m, const char* factor, sf_moments** out) {
  SF_REQUIRE(m, factor, out);
  return guard([&] { *out = new sf_moments{m->value.scaled(rational_arg(factor))}; });
}

sf_status sf_moments_max_index(const sf_moments* m, size_t* out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = m->value.max_index(); });
}

sf_status sf_moments_entry(const sf_moments* m, size_t i, size_t j, char** out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = copy_string(format_rational(m->value(i, j))); });
}

sf_status sf_moments_from_json(const char* text, sf_moments** out) {
  SF_REQUIRE(text, out);
  return guard([&] { *out = new sf_moments{moments_from_json(parse_json(text))}; });
}

sf_status sf_moments_to_json(const sf_moments* m, char** out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = copy_string(dump_json(moments_to_json(m->value))); });
}

void sf_moments_free(sf_moments* m) { delete m; }

sf_status sf_family_build(const sf_moments* m, size_t pairs, sf_family** out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = new sf_family{build_family(m->value, pairs)}; });
}

sf_status sf_family_oracle(const sf_moments* m, size_t pairs, sf_family** out) {
  SF_REQUIRE(m, out);
  return guard([&] { *out = new sf_family{oracle_family(m->value, pairs)}; });
}

sf_status sf_family_pairs(const sf_family* f, size_t* out) {
  SF_REQUIRE(f, out);
  return guard([&] { *out = f->value.pairs; });
}

sf_status sf_family_poly(const sf_family* f, size_t k, char** out) {
  SF_REQUIRE(f, out);
  return guard([&] {
    if (k >= f->value.polys.size()) raise(ErrorKind::InvalidArgument, "polynomial index out of range");
    *out = copy_string(polynomial_to_json(f->value.polys[k]).dump());
  });
}

sf_status sf_family_norm(const sf_family* f, size_t n, char** out) {
  SF_REQUIRE(f, out);
  return guard([&] {
    if (n >= f->value.norms.size()) raise(ErrorKind::InvalidArgument, "norm index out of range");
    *out = copy_string(format_rational(f->value.norms[n]));
  });
}

sf_status sf_family_from_json(const char* text, sf_family** out) {
  SF_REQUIRE(text, out);
  return guard([&] { *out = new sf_family{family_from_json(parse_json(text))}; });
}

sf_status sf_family_to_json(const sf_family* f, char** out) {
  SF_REQUIRE(f, out);
  return guard([&] { *out = copy_string(dump_json(family_to_json(f->value))); });
}

void sf_family_free(sf_family* f) { delete f; }

sf_status sf_chain_build(const sf_moments* m, size_t pairs, const char* lambda, size_t length,
                         sf_chain** out) {
  SF_REQUIRE(m, lambda, out);
  return guard([&] { *out = new sf_chain{build_chain(m->value, pairs, rational_arg(lambda), length)}; });
}

sf_status sf_chain_length(const sf_chain* c, size_t* out) {
  SF_REQUIRE(c, out);
  return guard([&] { *out = c->value.families.size(); });
}

sf_status sf_chain_from_json(const char* text, sf_chain** out) {
  SF_REQUIRE(text, out);
  return guard([&] { *out = new sf_chain{chain_from_json(parse_json(text))}; });
}

sf_status sf_chain_to_json(const sf_chain* c, char** out) {
  SF_REQUIRE(c, out);
  return guard([&] { *out = copy_string(dump_json(chain_to_json(c->value))); });
}

void sf_chain_free(sf_chain* c) { delete c; }

sf_status sf_grid_build(const sf_moments* m, const char* mu, const char* lambda, size_t pairs,
                        size_t s_extent, size_t t_extent, sf_grid** out) {
  SF_REQUIRE(m, mu, lambda, out);
  return guard([&] {
    LatticeConfig cfg;
    cfg.mu = rational_arg(mu);
    cfg.lambda = rational_arg(lambda);
    cfg.pairs = pairs;
    cfg.s_extent = s_extent;
    cfg.t_extent = t_extent;
    *out = new sf_grid{build_grid(m->value, cfg)};
  });
}

sf_status sf_grid_degenerate(const sf_grid* g, sf_grid** out) {
  SF_REQUIRE(g, out);
  return guard([&] { *out = new sf_grid{degenerate_sigma(g->value)}; });
}

sf_status sf_grid_from_json(const char* text, sf_grid** out) {
  SF_REQUIRE(text, out);
  return guard([&] { *out = new sf_grid{grid_from_json(parse_json(text))}; });
}

sf_status sf_grid_to_json(const sf_grid* g, char** out) {
  SF_REQUIRE(g, out);
  return guard([&] { *out = copy_string(dump_json(grid_to_json(g->value))); });
}

void sf_grid_free(sf_grid* g) { delete g; }

sf_status sf_verify_orthogonality(const sf_family* f, const sf_moments* m, sf_report** out) {
  SF_REQUIRE(f, m, out);
  return guard([&] {
    Json instance = Json::object();
    instance["moments"] = provenance_to_json(m->value.provenance());
    instance["family"] = family_summary(f->value);
    run_suite(std::move(instance), out, [&] { return verify_skew_orthogonality(f->value, m->value); });
  });
}

sf_status sf_verify_christoffel(const sf_family* f, const sf_moments* m, const char* lambda,
                                sf_report** out) {
  SF_REQUIRE(f, m, lambda, out);
  return guard([&] {
    const Rational l = rational_arg(lambda);
    Json instance = Json::object();
    instance["moments"] = provenance_to_json(m->value.provenance());
    instance["family"] = family_summary(f->value);
    instance["lambda"] = rational_to_json(l);
    run_suite(std::move(instance), out, [&] { return verify_christoffel(f->value, m->value, l); });
  });
}

sf_status sf_verify_geronimus(const sf_family* f, const sf_moments* m, const char* lambda,
                              sf_report** out) {
  SF_REQUIRE(f, m, lambda, out);
  return guard([&] {
    const Rational l = rational_arg(lambda);
    Json instance = Json::object();
    instance["moments"] = provenance_to_json(m->value.provenance());
    instance["family"] = family_summary(f->value);
    instance["lambda"] = rational_to_json(l);
    run_suite(std::move(instance), out, [&] {
      const SOPFamily next = christoffel(f->value, m->value, l).family;
      return verify_geronimus(next, f->value, m->value, l);
    });
  });
}

sf_status sf_verify_dlax(const sf_chain* c, size_t size, sf_report** out) {
  SF_REQUIRE(c, out);
  return guard([&] {
    const ChristoffelChain& chain = c->value;
    const std::size_t pairs = chain.families.front().pairs;
    const std::size_t window = size == 0 ? 2 * pairs + 2 : size;
    Json instance = Json::object();
    instance["moments"] = provenance_to_json(chain.moments.front().provenance());
    instance["lambda"] = rational_to_json(chain.lambda);
    instance["pairs"] = pairs;
    instance["length"] = chain.families.size();
    instance["size"] = window;
    run_suite(std::move(instance), out, [&] {
      const std::vector<LaxPair> lax = build_lax_pairs(chain, window);
      Report r = verify_lax_rows(chain, lax);
      r.suite = "dlax";
      for (std::size_t t = 0; t + 1 < lax.size(); ++t) {
        Report step = verify_dlax(lax[t].L, lax[t].R, lax[t + 1].L, lax[t + 1].R);
        for (auto& check : step.checks) check.id = "t" + std::to_string(t) + ":" + check.id;
        r.absorb(step);
      }
      if (lax.size() < 2) r.note("chain too short for L^t R^t = R^{t+1} L^{t+1}; rows only");
      return r;
    });
  });
}

sf_status sf_verify_kernel(const sf_family* f, const sf_moments* m, size_t n, const char* y,
                           sf_report** out) {
  SF_REQUIRE(f, m, y, out);
  return guard([&] {
    const Rational yv = rational_arg(y);
    Json instance = Json::object();
    instance["moments"] = provenance_to_json(m->value.provenance());
    instance["family"] = family_summary(f->value);
    instance["N"] = n;
    instance["y"] = rational_to_json(yv);
    run_suite(std::move(instance), out, [&] { return verify_factorization(f->value, m->value, n, yv); });
  });
}

sf_status sf_verify_grid(const sf_grid* g, const char* suite, sf_report** out) {
  SF_REQUIRE(g, suite, out);
  return guard([&] {
    const TauGrid& grid = g->value;
    const std::string name = suite;
    Json instance = Json::object();
    instance["grid"] = grid_summary(grid);
    run_suite(std::move(instance), out, [&]() -> Report {
      if (name == "dckp") return verify_dckp(grid);
      if (name == "slax") return verify_slax(grid, lattice_samples(grid.config()));
      if (name == "dpfl") return verify_dpfl(coefficient_field(grid));
      if (name == "edckp") return verify_edckp(grid);
      if (name == "edlax") return verify_edlax(grid, lattice_samples(grid.config()));
      if (name == "edpfl") return verify_edpfl(matrix_coefficient_field(grid));
      if (name == "crosscheck") return verify_crosscheck(grid);
      raise(ErrorKind::InvalidArgument, "unknown grid suite '" + name + "'");
    });
  });
}

sf_status sf_report_counts(const sf_report* r, size_t* checks, size_t* failed) {
  SF_REQUIRE(r, checks, failed);
  return guard([&] {
    *checks = r->value.checks.size();
    *failed = r->value.failures();
  });
}

sf_status sf_report_passed(const sf_report* r, int* out) {
  SF_REQUIRE(r, out);
  return guard([&] { *out = r->value.passed() ? 1 : 0; });
}

sf_status sf_report_to_json(const sf_report* r, char** out) {
  SF_REQUIRE(r, out);
  return guard([&] { *out = copy_string(dump_json(report_to_json(r->value))); });
}

void sf_report_free(sf_report* r) { delete r; }

}  // extern "C"
