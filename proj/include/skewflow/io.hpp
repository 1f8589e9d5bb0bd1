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

#include <string>

#include "json.hpp"
#include "skewflow/lattice.hpp"
#include "skewflow/moments.hpp"
#include "skewflow/polynomial.hpp"
#include "skewflow/report.hpp"
#include "skewflow/sops.hpp"
#include "skewflow/transforms.hpp"

namespace skewflow {

using Json = nlohmann::ordered_json;

// Rationals are "num/den" strings; polynomials are coefficient arrays,
// constant term first. Every decoder throws Error(Parse) on malformed input.

Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

/// { "max_index", "entries": [[i, j, "num/den"]] for nonzero i < j, "provenance" }.
Json moments_to_json(const SkewMoments& m);
SkewMoments moments_from_json(const Json& j);

/// { "pairs", "polys", "norms", "gauge" }.
Json family_to_json(const SOPFamily& f);
SOPFamily family_from_json(const Json& j);

/// { "lambda", "moments": [...], "families": [...] }.
Json chain_to_json(const ChristoffelChain& c);
ChristoffelChain chain_from_json(const Json& j);

/// { "config", "moments": base, "sites": [{ n, s, t, tau, sigma, tau_hat, sigma_hat }] }.
Json grid_to_json(const TauGrid& g);
TauGrid grid_from_json(const Json& j);

/// { "suite", "instance", "checks", "verdicts", "notes", "summary", "elapsed_ms" }.
Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

/// Two-space indent and a trailing newline.
std::string dump_json(const Json& j);
Json parse_json(const std::string& text);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace skewflow
