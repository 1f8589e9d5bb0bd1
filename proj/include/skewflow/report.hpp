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
#include <string>
#include <vector>

#include "json.hpp"

namespace skewflow {

struct Check {
  std::string id;
  bool passed = false;
  std::string detail;
};

/// A recorded finding about a printed or alternative form of an identity.
/// Verdicts never affect pass/fail.
struct Verdict {
  std::string id;
  bool holds = false;
  std::string detail;
};

/// Outcome of one verification suite.
struct Report {
  std::string suite;
  nlohmann::ordered_json instance = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  void check(std::string id, bool passed, std::string detail = {}) {
    checks.push_back({std::move(id), passed, std::move(detail)});
  }
  void verdict(std::string id, bool holds, std::string detail = {}) {
    verdicts.push_back({std::move(id), holds, std::move(detail)});
  }
  void note(std::string text) { notes.push_back(std::move(text)); }

  /// Appends the checks, verdicts and notes of another report.
  void absorb(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    verdicts.insert(verdicts.end(), other.verdicts.begin(), other.verdicts.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  /// Merges verdicts sharing an id: holds only if every occurrence holds.
  void fold_verdicts() {
    std::vector<Verdict> folded;
    std::vector<std::size_t> seen, held;
    for (const auto& v : verdicts) {
      std::size_t k = 0;
      while (k < folded.size() && folded[k].id != v.id) ++k;
      if (k == folded.size()) {
        folded.push_back({v.id, true, {}});
        seen.push_back(0);
        held.push_back(0);
      }
      folded[k].holds = folded[k].holds && v.holds;
      ++seen[k];
      held[k] += v.holds ? 1 : 0;
    }
    for (std::size_t k = 0; k < folded.size(); ++k) {
      folded[k].detail = "holds at " + std::to_string(held[k]) + " of " +
                         std::to_string(seen[k]) + " evaluations";
    }
    verdicts = std::move(folded);
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
  }
  bool passed() const { return failures() == 0; }
};

}  // namespace skewflow
