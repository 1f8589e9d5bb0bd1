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

#include "skewflow/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "skewflow/error.hpp"

namespace skewflow {

namespace {

[[noreturn]] void parse_error(const std::string& what) { raise(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) parse_error(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) parse_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) parse_error(std::string("field '") + key + "' must be an array");
  return v;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of rationals");
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_to_json(std::span<const Rational> values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(rational_to_json(v));
  return out;
}

// Maps json library exceptions onto Error(Parse).
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    parse_error(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json rational_to_json(const Rational& value) { return format_rational(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  parse_error("rational must be a \"num/den\" string, got " + j.dump());
}

Json polynomial_to_json(const Polynomial& p) { return rationals_to_json(p.coefficients()); }

Polynomial polynomial_from_json(const Json& j) { return Polynomial(rationals_from_json(j)); }

Json provenance_to_json(const Provenance& p) {
  Json j = Json::object();
  j["kind"] = p.kind;
  if (p.seed) j["seed"] = *p.seed;
  if (p.sub_seed) j["sub_seed"] = *p.sub_seed;
  if (p.bound) j["bound"] = *p.bound;
  if (!p.nodes.empty()) j["nodes"] = rationals_to_json(p.nodes);
  if (!p.weights.empty()) j["weights"] = rationals_to_json(p.weights);
  j["history"] = p.history;
  return j;
}

Provenance provenance_from_json(const Json& j) {
  return guarded("provenance", [&] {
    Provenance p;
    p.kind = string_field(j, "kind");
    if (j.contains("seed")) p.seed = field(j, "seed").get<std::uint64_t>();
    if (j.contains("sub_seed")) p.sub_seed = field(j, "sub_seed").get<std::uint64_t>();
    if (j.contains("bound")) p.bound = field(j, "bound").get<unsigned>();
    if (j.contains("nodes")) p.nodes = rationals_from_json(j["nodes"]);
    if (j.contains("weights")) p.weights = rationals_from_json(j["weights"]);
    if (j.contains("history")) p.history = j["history"].get<std::vector<std::string>>();
    return p;
  });
}

Json moments_to_json(const SkewMoments& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i <= m.max_index(); ++i) {
    for (std::size_t j = i + 1; j <= m.max_index(); ++j) {
      const Rational v = m(i, j);
      if (sgn(v) != 0) entries.push_back(Json::array({i, j, rational_to_json(v)}));
    }
  }
  Json out = Json::object();
  out["max_index"] = m.max_index();
  out["entries"] = std::move(entries);
  out["provenance"] = provenance_to_json(m.provenance());
  return out;
}

SkewMoments moments_from_json(const Json& j) {
  return guarded("moment file", [&] {
    const std::size_t max_index = size_field(j, "max_index");
    const std::size_t m = max_index + 1;
    std::vector<Rational> upper(m * (m - 1) / 2);
    std::vector<bool> seen(upper.size());
    for (const Json& e : array_field(j, "entries")) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
        parse_error("moment entry must be [i, j, \"num/den\"]");
      }
      const std::size_t a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
      if (a >= b || b > max_index) parse_error("moment entry needs i < j <= max_index, got " + e.dump());
      const std::size_t k = a * (2 * m - a - 1) / 2 + (b - a - 1);
      if (seen[k]) parse_error("duplicate moment entry " + e.dump());
      seen[k] = true;
      upper[k] = rational_from_json(e[2]);
    }
    const Provenance p = j.contains("provenance") ? provenance_from_json(j["provenance"]) : Provenance{};
    return SkewMoments(max_index, std::move(upper), p);
  });
}

Json family_to_json(const SOPFamily& f) {
  Json polys = Json::array();
  for (const Polynomial& p : f.polys) polys.push_back(polynomial_to_json(p));
  Json out = Json::object();
  out["pairs"] = f.pairs;
  out["polys"] = std::move(polys);
  out["norms"] = rationals_to_json(f.norms);
  out["gauge"] = f.gauge;
  return out;
}

SOPFamily family_from_json(const Json& j) {
  return guarded("family file", [&] {
    SOPFamily f;
    f.pairs = size_field(j, "pairs");
    for (const Json& p : array_field(j, "polys")) f.polys.push_back(polynomial_from_json(p));
    f.norms = rationals_from_json(array_field(j, "norms"));
    f.gauge = string_field(j, "gauge");
    if (f.polys.size() != 2 * f.pairs + 2 || f.norms.size() != f.pairs + 1) {
      parse_error("family with " + std::to_string(f.pairs) + " pairs needs " +
                  std::to_string(2 * f.pairs + 2) + " polys and " + std::to_string(f.pairs + 1) +
                  " norms");
    }
    return f;
  });
}

Json chain_to_json(const ChristoffelChain& c) {
  Json moments = Json::array(), families = Json::array();
  for (const auto& m : c.moments) moments.push_back(moments_to_json(m));
  for (const auto& f : c.families) families.push_back(family_to_json(f));
  Json out = Json::object();
  out["lambda"] = rational_to_json(c.lambda);
  out["moments"] = std::move(moments);
  out["families"] = std::move(families);
  return out;
}

ChristoffelChain chain_from_json(const Json& j) {
  return guarded("chain file", [&] {
    ChristoffelChain c;
    c.lambda = rational_from_json(field(j, "lambda"));
    for (const Json& m : array_field(j, "moments")) c.moments.push_back(moments_from_json(m));
    for (const Json& f : array_field(j, "families")) c.families.push_back(family_from_json(f));
    if (c.moments.size() != c.families.size() || c.families.empty()) {
      parse_error("chain needs one moment table per family");
    }
    return c;
  });
}

Json grid_to_json(const TauGrid& g) {
  const LatticeConfig& cfg = g.config();
  Json config = Json::object();
  config["mu"] = rational_to_json(cfg.mu);
  config["lambda"] = rational_to_json(cfg.lambda);
  config["pairs"] = cfg.pairs;
  config["s_extent"] = cfg.s_extent;
  config["t_extent"] = cfg.t_extent;
  Json sites = Json::array();
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t s = 0; s <= cfg.s_extent; ++s) {
      for (std::size_t t = 0; t <= cfg.t_extent; ++t) {
        Json site = Json::object();
        site["n"] = n;
        site["s"] = s;
        site["t"] = t;
        site["tau"] = rational_to_json(g.tau(n, s, t));
        site["sigma"] = rational_to_json(g.sigma(n, s, t));
        site["tau_hat"] = polynomial_to_json(g.tau_hat(n, s, t));
        site["sigma_hat"] = polynomial_to_json(g.sigma_hat(n, s, t));
        sites.push_back(std::move(site));
      }
    }
  }
  Json out = Json::object();
  out["config"] = std::move(config);
  out["moments"] = moments_to_json(g.base());
  out["sites"] = std::move(sites);
  return out;
}

TauGrid grid_from_json(const Json& j) {
  return guarded("grid file", [&] {
    const Json& c = field(j, "config");
    LatticeConfig cfg;
    cfg.mu = rational_from_json(field(c, "mu"));
    cfg.lambda = rational_from_json(field(c, "lambda"));
    cfg.pairs = size_field(c, "pairs");
    cfg.s_extent = size_field(c, "s_extent");
    cfg.t_extent = size_field(c, "t_extent");
    const SkewMoments base = moments_from_json(field(j, "moments"));
    const std::size_t count = (cfg.pairs + 2) * (cfg.s_extent + 1) * (cfg.t_extent + 1);
    const Json& sites = array_field(j, "sites");
    if (sites.size() != count) {
      parse_error("grid needs " + std::to_string(count) + " sites, file has " +
                  std::to_string(sites.size()));
    }
    std::vector<Rational> tau(count), sigma(count);
    std::vector<Polynomial> tau_hat(count), sigma_hat(count);
    std::vector<bool> seen(count);
    for (const Json& site : sites) {
      const std::size_t n = size_field(site, "n"), s = size_field(site, "s"), t = size_field(site, "t");
      if (n >= cfg.pairs + 2 || s > cfg.s_extent || t > cfg.t_extent) {
        parse_error("grid site outside the box: " + site.dump());
      }
      const std::size_t k = (n * (cfg.s_extent + 1) + s) * (cfg.t_extent + 1) + t;
      if (seen[k]) parse_error("duplicate grid site " + site.dump());
      seen[k] = true;
      tau[k] = rational_from_json(field(site, "tau"));
      sigma[k] = rational_from_json(field(site, "sigma"));
      tau_hat[k] = polynomial_from_json(field(site, "tau_hat"));
      sigma_hat[k] = polynomial_from_json(field(site, "sigma_hat"));
    }
    return TauGrid(cfg, base, std::move(tau), std::move(sigma), std::move(tau_hat),
                   std::move(sigma_hat));
  });
}

Json report_to_json(const Report& r) {
  Json checks = Json::array(), verdicts = Json::array();
  std::size_t failed = 0;
  for (const Check& c : r.checks) {
    if (!c.passed) ++failed;
    Json x = Json::object();
    x["id"] = c.id;
    x["status"] = c.passed ? "pass" : "fail";
    x["detail"] = c.detail;
    checks.push_back(std::move(x));
  }
  for (const Verdict& v : r.verdicts) {
    Json x = Json::object();
    x["id"] = v.id;
    x["holds"] = v.holds;
    x["detail"] = v.detail;
    verdicts.push_back(std::move(x));
  }
  Json summary = Json::object();
  summary["checks"] = r.checks.size();
  summary["failed"] = failed;
  summary["status"] = r.passed() ? "pass" : "fail";
  Json out = Json::object();
  out["suite"] = r.suite;
  out["instance"] = r.instance;
  out["checks"] = std::move(checks);
  out["verdicts"] = std::move(verdicts);
  out["notes"] = r.notes;
  out["summary"] = std::move(summary);
  out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

Report report_from_json(const Json& j) {
  return guarded("report file", [&] {
    Report r;
    r.suite = string_field(j, "suite");
    if (j.contains("instance")) r.instance = j["instance"];
    for (const Json& c : array_field(j, "checks")) {
      const std::string status = string_field(c, "status");
      if (status != "pass" && status != "fail") parse_error("check status must be pass or fail");
      r.check(string_field(c, "id"), status == "pass", c.value("detail", std::string{}));
    }
    if (j.contains("verdicts")) {
      for (const Json& v : array_field(j, "verdicts")) {
        r.verdict(string_field(v, "id"), field(v, "holds").get<bool>(), v.value("detail", std::string{}));
      }
    }
    if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
    if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<double>();
    return r;
  });
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << dump_json(j);
  if (!out) raise(ErrorKind::InvalidArgument, "failed writing '" + path + "'");
}

}  // namespace skewflow
