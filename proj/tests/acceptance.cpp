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

// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Sizes follow the published acceptance sweep.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skewflow/error.hpp"
#include "skewflow/io.hpp"
#include "skewflow/lattice.hpp"
#include "skewflow/pfaffian.hpp"
#include "skewflow/sops.hpp"
#include "skewflow/transforms.hpp"

using namespace skewflow;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::size_t instances = 0;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs one criterion; exceptions count as failures.
bool criterion(int number, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  if (limit_s > 0 && elapsed >= limit_s) out.fail("over the " + std::to_string(limit_s) + " s budget");
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
  std::cout << (out.ok ? "PASS" : "FAIL") << "  " << number << ". " << name << ": "
            << out.instances << (out.instances == 1 ? " instance, " : " instances, ") << timing;
  if (!out.detail.empty()) std::cout << "; " << out.detail;
  std::cout << std::endl;
  return out.ok;
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) return r.suite + " " + c.id + ": " + c.detail;
  }
  return "";
}

void expect(Outcome& out, const Report& r, const std::string& instance) {
  if (r.checks.empty()) out.fail(instance + ": " + r.suite + " produced no checks");
  if (!r.passed()) out.fail(instance + ": " + first_failure(r));
}

/// Random discrete measure: `count` distinct integer nodes in [-20, 20],
/// weights in {1..5}. Integer nodes never meet the non-integer shift points.
DiscreteMeasure random_measure(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed * 7919 + 17);
  std::vector<int> pool(41);
  std::iota(pool.begin(), pool.end(), -20);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  std::vector<Rational> x, w;
  for (int v : pool) {
    x.emplace_back(v);
    w.emplace_back(static_cast<long>(rng() % 5 + 1));
  }
  return DiscreteMeasure(std::move(x), std::move(w));
}

struct Instance {
  std::string name;
  SkewMoments moments;
};

/// `seeds` random tables plus `seeds` draws of each ensemble constructor.
std::vector<Instance> sweep(std::size_t seeds, std::size_t max_index, std::size_t nodes, bool ensembles_per_seed) {
  std::vector<Instance> out;
  for (std::uint64_t s = 1; s <= seeds; ++s) {
    out.push_back({"random seed " + std::to_string(s), from_random(s, max_index, 9)});
  }
  const std::size_t draws = ensembles_per_seed ? seeds : 1;
  for (std::uint64_t s = 1; s <= draws; ++s) {
    out.push_back({"orthogonal draw " + std::to_string(s),
                   from_discrete_orthogonal(random_measure(s, nodes), max_index)});
    out.push_back({"symplectic draw " + std::to_string(s),
                   from_discrete_symplectic(random_measure(s + 1000, nodes), max_index)});
  }
  return out;
}

const Rational kLambdas[] = {Rational(1, 2), Rational(-5, 3), Rational(7, 4)};

// C1
void pfaffian_correctness(Outcome& out) {
  for (std::size_t dim = 2; dim <= 12; dim += 2) {
    for (std::uint64_t k = 0; k < 50; ++k) {
      const SkewMatrix m = oracle::random_skew(dim * 1000 + k, dim);
      const Rational pf = pfaffian(m);
      ++out.instances;
      if (pf != pfaffian_expand(m)) out.fail("elimination and expansion differ at dim " + std::to_string(dim));
      if (pf * pf != oracle::determinant(m)) out.fail("Pf^2 != det at dim " + std::to_string(dim));
    }
  }
}

Polynomial project(const Polynomial& odd, const Polynomial& even, std::size_t n) {
  return odd - even * odd.coefficient(2 * n);
}

// C2
void sop_construction(Outcome& out) {
  for (const Instance& inst : sweep(20, 12, 12, true)) {
    for (std::size_t N = 0; N <= 4; ++N) {
      ++out.instances;
      const std::string at = inst.name + ", N=" + std::to_string(N);
      const SOPFamily pf = build_family(inst.moments, N);
      const SOPFamily lin = oracle_family(inst.moments, N);
      for (std::size_t n = 0; n <= N; ++n) {
        if (pf.even(n) != lin.even(n)) out.fail(at + ": q_" + std::to_string(2 * n) + " differs");
        if (project(pf.odd(n), pf.even(n), n) != project(lin.odd(n), lin.even(n), n)) {
          out.fail(at + ": q_" + std::to_string(2 * n + 1) + " differs after gauge projection");
        }
        if (pf.norms[n] != lin.norms[n]) out.fail(at + ": r_" + std::to_string(n) + " differs");
      }
      expect(out, verify_skew_orthogonality(pf, inst.moments), at + " (Pfaffian family)");
      expect(out, verify_skew_orthogonality(lin, inst.moments), at + " (oracle family)");
    }
  }
}

// C3, C4
void christoffel_sweep(Outcome& out, bool geronimus) {
  for (const Instance& inst : sweep(20, 12, 12, false)) {
    for (std::size_t N = 0; N <= 4; ++N) {
      const SOPFamily f = build_family(inst.moments, N);
      for (const Rational& l : kLambdas) {
        ++out.instances;
        const std::string at = inst.name + ", N=" + std::to_string(N) + ", lambda=" + format_rational(l);
        if (!geronimus) {
          const Report r = verify_christoffel(f, inst.moments, l);
          expect(out, r, at);
          const ChristoffelResult c = christoffel(f, inst.moments, l);
          for (std::size_t n = 0; n <= N; ++n) {
            const Rational ratio = sop_even(inst.moments, n + 1)(l) / f.even(n)(l);
            if (c.family.norms[n] != ratio * f.norms[n]) out.fail(at + ": r*_" + std::to_string(n));
          }
        } else {
          const ChristoffelResult c = christoffel(f, inst.moments, l);
          expect(out, verify_geronimus(c.family, f, inst.moments, l), at);
        }
      }
    }
  }
}

// C5
void discrete_lax(Outcome& out) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ++out.instances;
    const std::string at = "seed " + std::to_string(seed);
    const SkewMoments m = from_random(seed, 14, 9);
    const ChristoffelChain chain = build_chain(m, 4, Rational(1, 2), 3);
    const std::vector<LaxPair> lax = build_lax_pairs(chain, 10);
    expect(out, verify_lax_rows(chain, lax), at);
    for (std::size_t t = 0; t + 1 < lax.size(); ++t) {
      const Report r = verify_dlax(lax[t].L, lax[t].R, lax[t + 1].L, lax[t + 1].R);
      expect(out, r, at + ", t=" + std::to_string(t));
    }
  }
}

// C6
void kernel_factorization(Outcome& out) {
  const Rational ys[] = {Rational(1, 3), Rational(-2), Rational(5, 2)};
  std::map<std::string, std::size_t> matched;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SkewMoments m = from_random(seed, 12, 9);
    for (std::size_t N = 1; N <= 3; ++N) {
      const SOPFamily f = build_family(m, N);
      for (const Rational& y : ys) {
        ++out.instances;
        const Report r = verify_factorization(f, m, N, y);
        expect(out, r, "seed " + std::to_string(seed) + ", N=" + std::to_string(N) + ", y=" + format_rational(y));
        for (const auto& v : r.verdicts) {
          if (v.holds) ++matched[v.id];
        }
      }
    }
  }
  if (matched.size() != 1 || matched.begin()->second != out.instances) {
    out.fail("matching form is not the same in every instance");
  } else if (out.ok) {
    out.detail = "matching form " + matched.begin()->first;
  }
}

struct Box {
  std::string name;
  TauGrid grid;
};

std::vector<Box> boxes() {
  LatticeConfig cfg;
  cfg.mu = Rational(1, 2);
  cfg.lambda = Rational(-1, 3);
  cfg.pairs = 3;
  cfg.s_extent = 2;
  cfg.t_extent = 2;
  std::vector<Box> out;
  for (const Instance& inst : sweep(10, cfg.required_max_index(), 12, false)) {
    out.push_back({inst.name, build_grid(inst.moments, cfg)});
  }
  return out;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  bool all = true;
  all &= criterion(1, "Pfaffian correctness (elimination = expansion, Pf^2 = det)", 30, pfaffian_correctness);
  all &= criterion(2, "SOP construction (Pfaffian formulas = linear-solve oracle)", 60, sop_construction);
  all &= criterion(3, "Skew-Christoffel transformation", 60, [](Outcome& o) { christoffel_sweep(o, false); });
  all &= criterion(4, "Geronimus reconstruction", 60, [](Outcome& o) { christoffel_sweep(o, true); });
  all &= criterion(5, "Discrete Lax equation L^t R^t = R^{t+1} L^{t+1}", 0, discrete_lax);
  all &= criterion(6, "Kernel factorization", 0, kernel_factorization);

  std::vector<Box> grids;
  all &= criterion(7, "Pfaffian-expression crosschecks", 0, [&](Outcome& o) {
    grids = boxes();
    for (const Box& b : grids) {
      ++o.instances;
      expect(o, verify_crosscheck(b.grid), b.name);
    }
  });
  all &= criterion(8, "Bilinear systems (dcKP, edcKP)", 0, [&](Outcome& o) {
    if (grids.empty()) grids = boxes();
    for (const Box& b : grids) {
      ++o.instances;
      expect(o, verify_dckp(b.grid), b.name);
      expect(o, verify_edckp(b.grid), b.name);
    }
  });
  all &= criterion(9, "Nonlinear systems (dpfl, edpfl, sigma = tau degeneration)", 0, [&](Outcome& o) {
    if (grids.empty()) grids = boxes();
    std::string table;
    for (const Box& b : grids) {
      ++o.instances;
      expect(o, verify_dpfl(coefficient_field(b.grid)), b.name);
      const Report e = verify_edpfl(matrix_coefficient_field(b.grid));
      expect(o, e, b.name);
      std::string row;
      for (const auto& v : e.verdicts) row += v.id + (v.holds ? "=1;" : "=0;");
      if (table.empty()) table = row;
      if (row != table) o.fail(b.name + ": edpfl verdict table differs from the first instance");

      const TauGrid degenerate = degenerate_sigma(b.grid);
      const Report d = verify_edpfl(matrix_coefficient_field(degenerate));
      expect(o, d, b.name + " (sigma = tau)");
      for (const auto& v : d.verdicts) {
        if (v.id.find(":pattern,") != std::string::npos && !v.holds) {
          o.fail(b.name + " (sigma = tau): " + v.id + " does not reproduce dpfl");
        }
      }
    }
    if (o.ok) {
      std::string holding;
      for (const auto& v : verify_edpfl(matrix_coefficient_field(grids.front().grid)).verdicts) {
        if (v.holds) holding += (holding.empty() ? "" : ", ") + v.id;
      }
      o.detail = "variants holding: " + holding;
    }
  });
  all &= criterion(10, "Determinism and round-trip", 0, [&](Outcome& o) {
    // Library formats.
    std::vector<Instance> tables = sweep(3, 14, 12, false);
    tables.push_back({"shifted", shift(from_random(9, 15, 9), Rational(1, 2)).scaled(Rational(-3, 7))});
    for (const Instance& inst : tables) {
      ++o.instances;
      const std::string m = dump_json(moments_to_json(inst.moments));
      const SkewMoments back = moments_from_json(parse_json(m));
      if (!(back == inst.moments) || dump_json(moments_to_json(back)) != m) o.fail(inst.name + ": moment file");
      const SOPFamily f = build_family(inst.moments, 3);
      const std::string fj = dump_json(family_to_json(f));
      if (!(family_from_json(parse_json(fj)) == f)) o.fail(inst.name + ": family file");
      const ChristoffelChain c = build_chain(inst.moments, 3, Rational(1, 2), 3);
      const std::string cj = dump_json(chain_to_json(c));
      if (dump_json(chain_to_json(chain_from_json(parse_json(cj)))) != cj) o.fail(inst.name + ": chain file");
      const Report r = verify_skew_orthogonality(f, inst.moments);
      const std::string rj = dump_json(report_to_json(r));
      if (dump_json(report_to_json(report_from_json(parse_json(rj)))) != rj) o.fail(inst.name + ": report file");
    }
    if (grids.empty()) grids = boxes();
    for (const Box& b : grids) {
      ++o.instances;
      const std::string gj = dump_json(grid_to_json(b.grid));
      const TauGrid back = grid_from_json(parse_json(gj));
      if (!(back == b.grid) || dump_json(grid_to_json(back)) != gj) o.fail(b.name + ": grid file");
    }

    // CLI byte-identity over two full runs.
    const fs::path dir = fs::temp_directory_path() / "skewflow_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::vector<std::string> steps = {
        "gen-moments --seed 42 --max-index 14 -o m.json",
        "gen-moments --kind symplectic --nodes 1,2 --weights 1,1 --max-index 12 -o s.json",
        "family --moments m.json --pairs 3 -o f.json",
        "transform --moments m.json --pairs 3 --lambda 1/2 --length 3 -o c.json",
        "grid --moments m.json --mu 1/2 --lambda=-1/3 --pairs 2 -o g.json",
        "verify --suite orthogonality --family f.json --moments m.json -o r1.json",
        "verify --suite christoffel --family f.json --moments m.json --lambda 3 -o r2.json",
        "verify --suite geronimus --family f.json --moments m.json --lambda 3 -o r3.json",
        "verify --suite kernel --family f.json --moments m.json --y 1/3 -o r4.json",
        "verify --suite dlax --chain c.json -o r5.json",
        "verify --suite dckp --grid g.json -o r6.json",
        "verify --suite slax --grid g.json -o r7.json",
        "verify --suite dpfl --grid g.json -o r8.json",
        "verify --suite edckp --grid g.json -o r9.json",
        "verify --suite edlax --grid g.json -o r10.json",
        "verify --suite edpfl --grid g.json -o r11.json",
        "verify --suite crosscheck --grid g.json -o r12.json",
    };
    const std::regex elapsed("\"elapsed_ms\": [-0-9.eE+]+");
    std::map<std::string, std::string> first;
    for (int round = 0; round < 2; ++round) {
      for (const std::string& step : steps) {
        const std::string cmd = "cd '" + dir.string() + "' && '" SKEWFLOW_CLI "' " + step + " >/dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) o.fail("CLI step failed: " + step);
      }
      for (const auto& entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        const std::string body = std::regex_replace(text.str(), elapsed, "\"elapsed_ms\": 0");
        const std::string name = entry.path().filename().string();
        if (round == 0) {
          first[name] = body;
        } else if (first[name] != body) {
          o.fail("CLI output " + name + " differs between runs");
        }
      }
      ++o.instances;
    }
  });
  const double total = seconds_since(start);
  all &= criterion(11, "Full battery under 10 minutes", 0, [&](Outcome& o) {
    o.instances = 1;
    if (total >= 600) o.fail("took " + std::to_string(total) + " s");
    else o.detail = "battery took " + std::to_string(static_cast<int>(total + 0.5)) + " s";
  });
  return all ? 0 : 1;
}
