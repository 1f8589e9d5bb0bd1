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

// skewflow command-line driver. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewflow/skewflow.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitSingular = 2;
constexpr int kExitUsage = 3;

// Thrown to unwind with a status from the library.
struct Failure {
  sf_status status;
  std::string message;
};

int exit_code(sf_status status) {
  switch (status) {
    case SF_OK: return kExitPass;
    case SF_ERR_SINGULAR: return kExitSingular;
    case SF_ERR_NOT_DIVISIBLE: return kExitFail;
    default: return kExitUsage;
  }
}

void ok(sf_status status) {
  if (status != SF_OK) throw Failure{status, sf_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Moments = std::unique_ptr<sf_moments, Deleter<sf_moments, sf_moments_free>>;
using Family = std::unique_ptr<sf_family, Deleter<sf_family, sf_family_free>>;
using Chain = std::unique_ptr<sf_chain, Deleter<sf_chain, sf_chain_free>>;
using Grid = std::unique_ptr<sf_grid, Deleter<sf_grid, sf_grid_free>>;
using ReportPtr = std::unique_ptr<sf_report, Deleter<sf_report, sf_report_free>>;

std::string take(char* text) {
  std::string out = text;
  sf_string_free(text);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{SF_ERR_INVALID_ARGUMENT, "cannot open '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// "-" or empty writes to stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{SF_ERR_INVALID_ARGUMENT, "cannot write '" + path + "'"};
}

template <class Handle, class Load>
Handle load(const std::string& path, const char* what, Load&& from_json) {
  if (path.empty()) throw Failure{SF_ERR_INVALID_ARGUMENT, std::string("missing --") + what};
  typename Handle::pointer raw = nullptr;
  const sf_status status = from_json(read_text(path).c_str(), &raw);
  if (status != SF_OK) throw Failure{status, path + ": " + sf_last_error()};
  return Handle(raw);
}

struct GenMoments {
  std::string kind = "random";
  std::uint64_t seed = 42;
  unsigned bound = 9;
  std::vector<std::string> nodes, weights;
  std::size_t max_index = 12;
  std::vector<std::string> shifts;
  std::string scale;
  std::string output;
};

struct FamilyArgs {
  std::string moments, output;
  std::size_t pairs = 1;
  bool oracle = false;
};

struct TransformArgs {
  std::string moments, lambda, output;
  std::size_t pairs = 1, length = 2;
};

struct GridArgs {
  std::string moments, mu, lambda, output;
  std::size_t pairs = 1, s_extent = 2, t_extent = 2;
  bool degenerate = false;
};

struct VerifyArgs {
  std::string suite, moments, family, chain, grid, lambda, y, output;
  std::size_t size = 0;
  std::size_t n = 0;
  bool n_given = false;
};

int run_gen_moments(const GenMoments& a) {
  sf_moments* raw = nullptr;
  if (a.kind == "random") {
    ok(sf_moments_random(a.seed, a.max_index, a.bound, &raw));
  } else {
    if (a.nodes.size() != a.weights.size()) {
      throw Failure{SF_ERR_INVALID_ARGUMENT, "--nodes and --weights need the same length"};
    }
    std::vector<const char*> x, w;
    for (const auto& s : a.nodes) x.push_back(s.c_str());
    for (const auto& s : a.weights) w.push_back(s.c_str());
    ok(sf_moments_discrete(a.kind.c_str(), x.data(), w.data(), x.size(), a.max_index, &raw));
  }
  Moments m(raw);
  for (const auto& c : a.shifts) {
    ok(sf_moments_shift(m.get(), c.c_str(), &raw));
    m.reset(raw);
  }
  if (!a.scale.empty()) {
    ok(sf_moments_scale(m.get(), a.scale.c_str(), &raw));
    m.reset(raw);
  }
  char* text = nullptr;
  ok(sf_moments_to_json(m.get(), &text));
  write_text(a.output, take(text));
  std::size_t max_index = 0;
  ok(sf_moments_max_index(m.get(), &max_index));
  std::cerr << "gen-moments: " << a.kind << " table, max_index " << max_index << "\n";
  return kExitPass;
}

int run_family(const FamilyArgs& a) {
  const Moments m = load<Moments>(a.moments, "moments", sf_moments_from_json);
  sf_family* raw = nullptr;
  ok(a.oracle ? sf_family_oracle(m.get(), a.pairs, &raw) : sf_family_build(m.get(), a.pairs, &raw));
  const Family f(raw);
  char* text = nullptr;
  ok(sf_family_to_json(f.get(), &text));
  write_text(a.output, take(text));
  std::cerr << "family: " << a.pairs << " pairs, " << (a.oracle ? "linear-solve oracle" : "Pfaffian formulas")
            << "\n";
  return kExitPass;
}

int run_transform(const TransformArgs& a) {
  const Moments m = load<Moments>(a.moments, "moments", sf_moments_from_json);
  sf_chain* raw = nullptr;
  ok(sf_chain_build(m.get(), a.pairs, a.lambda.c_str(), a.length, &raw));
  const Chain c(raw);
  char* text = nullptr;
  ok(sf_chain_to_json(c.get(), &text));
  write_text(a.output, take(text));
  std::cerr << "transform: chain of " << a.length << " families at lambda " << a.lambda << "\n";
  return kExitPass;
}

int run_grid(const GridArgs& a) {
  const Moments m = load<Moments>(a.moments, "moments", sf_moments_from_json);
  sf_grid* raw = nullptr;
  ok(sf_grid_build(m.get(), a.mu.c_str(), a.lambda.c_str(), a.pairs, a.s_extent, a.t_extent, &raw));
  Grid g(raw);
  if (a.degenerate) {
    ok(sf_grid_degenerate(g.get(), &raw));
    g.reset(raw);
  }
  char* text = nullptr;
  ok(sf_grid_to_json(g.get(), &text));
  write_text(a.output, take(text));
  std::cerr << "grid: N " << a.pairs << ", S " << a.s_extent << ", T " << a.t_extent
            << (a.degenerate ? ", sigma = tau" : "") << "\n";
  return kExitPass;
}

int run_verify(const VerifyArgs& a) {
  sf_report* raw = nullptr;
  const std::string& s = a.suite;
  auto need = [](const std::string& value, const char* flag) {
    if (value.empty()) throw Failure{SF_ERR_INVALID_ARGUMENT, std::string("suite needs --") + flag};
  };
  if (s == "orthogonality" || s == "christoffel" || s == "geronimus" || s == "kernel") {
    const Family f = load<Family>(a.family, "family", sf_family_from_json);
    const Moments m = load<Moments>(a.moments, "moments", sf_moments_from_json);
    if (s == "orthogonality") {
      ok(sf_verify_orthogonality(f.get(), m.get(), &raw));
    } else if (s == "kernel") {
      need(a.y, "y");
      std::size_t n = a.n;
      if (!a.n_given) ok(sf_family_pairs(f.get(), &n));
      ok(sf_verify_kernel(f.get(), m.get(), n, a.y.c_str(), &raw));
    } else {
      need(a.lambda, "lambda");
      ok(s == "christoffel" ? sf_verify_christoffel(f.get(), m.get(), a.lambda.c_str(), &raw)
                            : sf_verify_geronimus(f.get(), m.get(), a.lambda.c_str(), &raw));
    }
  } else if (s == "dlax") {
    const Chain c = load<Chain>(a.chain, "chain", sf_chain_from_json);
    ok(sf_verify_dlax(c.get(), a.size, &raw));
  } else {
    const Grid g = load<Grid>(a.grid, "grid", sf_grid_from_json);
    ok(sf_verify_grid(g.get(), s.c_str(), &raw));
  }
  const ReportPtr report(raw);
  char* text = nullptr;
  ok(sf_report_to_json(report.get(), &text));
  write_text(a.output, take(text));
  std::size_t checks = 0, failed = 0;
  ok(sf_report_counts(report.get(), &checks, &failed));
  std::ostream& summary = a.output.empty() || a.output == "-" ? std::cerr : std::cout;
  summary << s << ": " << (failed == 0 ? "PASS" : "FAIL") << " (" << checks - failed << "/" << checks
          << " checks)\n";
  return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew orthogonal polynomials, skew-Christoffel transformations and Pfaff lattices "
               "in exact rational arithmetic."};
  app.require_subcommand(1);
  app.set_version_flag("--version", sf_version());

  GenMoments gen;
  auto* g = app.add_subcommand("gen-moments", "Generate a skew-moment table");
  g->add_option("--kind", gen.kind, "random, orthogonal or symplectic")
      ->check(CLI::IsMember({"random", "orthogonal", "symplectic"}));
  g->add_option("--seed", gen.seed, "Seed for random tables");
  g->add_option("--bound", gen.bound, "Entry height bound for random tables")->check(CLI::Range(1u, 1000000u));
  g->add_option("--nodes", gen.nodes, "Comma-separated rational nodes")->delimiter(',');
  g->add_option("--weights", gen.weights, "Comma-separated positive rational weights")->delimiter(',');
  g->add_option("--max-index", gen.max_index, "Largest moment index");
  g->add_option("--shift", gen.shifts, "Apply the (z-c) shift, repeatable");
  g->add_option("--scale", gen.scale, "Multiply every moment by this rational");
  g->add_option("-o,--output", gen.output, "Output file (default stdout)");

  FamilyArgs fam;
  auto* f = app.add_subcommand("family", "Build an SOP family");
  f->add_option("--moments", fam.moments, "Moment file")->required();
  f->add_option("--pairs", fam.pairs, "Number N of pairs beyond q_0, q_1");
  f->add_flag("--oracle", fam.oracle, "Use the linear-solve construction");
  f->add_option("-o,--output", fam.output, "Output file (default stdout)");

  TransformArgs tr;
  auto* t = app.add_subcommand("transform", "Iterate the skew-Christoffel transformation");
  t->add_option("--moments", tr.moments, "Moment file")->required();
  t->add_option("--pairs", tr.pairs, "Number N of pairs");
  t->add_option("--lambda", tr.lambda, "Transformation point")->required();
  t->add_option("--length", tr.length, "Number of families in the chain");
  t->add_option("-o,--output", tr.output, "Output file (default stdout)");

  GridArgs grid;
  auto* gr = app.add_subcommand("grid", "Build the tau/sigma grid on a box");
  gr->add_option("--moments", grid.moments, "Moment file")->required();
  gr->add_option("--mu", grid.mu, "First shift parameter")->required();
  gr->add_option("--lambda", grid.lambda, "Second shift parameter")->required();
  gr->add_option("--pairs", grid.pairs, "Largest n carrying coefficients");
  gr->add_option("--s-extent", grid.s_extent, "Largest s");
  gr->add_option("--t-extent", grid.t_extent, "Largest t");
  gr->add_flag("--degenerate", grid.degenerate, "Replace sigma by tau");
  gr->add_option("-o,--output", grid.output, "Output file (default stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run a verification suite and write its JSON report");
  v->add_option("--suite", ver.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"orthogonality", "christoffel", "geronimus", "dlax", "kernel", "dckp",
                             "slax", "dpfl", "edckp", "edlax", "edpfl", "crosscheck"}));
  v->add_option("--moments", ver.moments, "Moment file");
  v->add_option("--family", ver.family, "Family file");
  v->add_option("--chain", ver.chain, "Chain file");
  v->add_option("--grid", ver.grid, "Grid file");
  v->add_option("--lambda", ver.lambda, "Transformation point");
  v->add_option("--y", ver.y, "Kernel argument y");
  auto* n_opt = v->add_option("--n", ver.n, "Kernel order N (default: all pairs)");
  v->add_option("--size", ver.size, "Lax truncation size (default 2N+2)");
  v->add_option("-o,--output,--report", ver.output, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  ver.n_given = n_opt->count() > 0;

  try {
    if (*g) return run_gen_moments(gen);
    if (*f) return run_family(fam);
    if (*t) return run_transform(tr);
    if (*gr) return run_grid(grid);
    if (*v) return run_verify(ver);
  } catch (const Failure& e) {
    std::cerr << "error (" << sf_status_name(e.status) << "): " << e.message << "\n";
    return exit_code(e.status);
  }
  return kExitUsage;
}
