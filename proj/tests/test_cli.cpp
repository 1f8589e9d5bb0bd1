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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

// Runs the CLI inside `dir`; returns its exit status.
int cli(const fs::path& dir, const std::string& args) {
  const std::string command =
      "cd '" + dir.string() + "' && '" SKEWFLOW_CLI "' " + args + " >/dev/null 2>&1";
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_elapsed(const std::string& text) {
  return std::regex_replace(text, std::regex("\"elapsed_ms\": [-0-9.eE+]+"), "\"elapsed_ms\": 0");
}

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("Symplectic instance end to end") {
  const fs::path dir = scratch("skewflow_cli_symplectic");
  REQUIRE(cli(dir, "gen-moments --kind symplectic --nodes 1,2 --weights 1,1 --max-index 12 -o m.json") == 0);
  REQUIRE(cli(dir, "family --moments m.json --pairs 1 -o f.json") == 0);
  const std::string family = slurp(dir / "f.json");
  const std::string compact = std::regex_replace(family, std::regex("\\s+"), "");
  CHECK(compact.find(R"(["5/2","-3/1","1/1"])") != std::string::npos);
  CHECK(compact.find(R"("gauge":"pfaffian-alpha-zero")") != std::string::npos);
  CHECK(cli(dir, "verify --suite orthogonality --family f.json --moments m.json -o r.json") == 0);
  const std::string report = slurp(dir / "r.json");
  CHECK(report.find("\"kind\": \"symplectic\"") != std::string::npos);
  CHECK(report.find("\"status\": \"fail\"") == std::string::npos);
  CHECK(cli(dir, "verify --suite christoffel --family f.json --moments m.json --lambda 3 -o c.json") == 0);
  CHECK(cli(dir, "verify --suite geronimus --family f.json --moments m.json --lambda 1/2 -o g.json") == 0);
  CHECK(cli(dir, "verify --suite kernel --family f.json --moments m.json --y 1/3 -o k.json") == 0);
  CHECK(cli(dir, "transform --moments m.json --pairs 1 --lambda 3 --length 3 -o chain.json") == 0);
  CHECK(cli(dir, "verify --suite dlax --chain chain.json -o d.json") == 0);
}

TEST_CASE("Exit codes") {
  const fs::path dir = scratch("skewflow_cli_codes");
  REQUIRE(cli(dir, "gen-moments --kind symplectic --nodes 1,2 --weights 1,1 --max-index 12 -o m.json") == 0);
  // Two nodes give rank 4: the second pair is singular.
  CHECK(cli(dir, "family --moments m.json --pairs 2 -o f.json") == 2);
  CHECK(cli(dir, "verify --suite toda --grid g.json") == 3);
  CHECK(cli(dir, "family --moments absent.json") == 3);
  CHECK(cli(dir, "grid --moments m.json --mu 1 --lambda 1") == 3);
  CHECK(cli(dir, "") == 3);
  CHECK(cli(dir, "--help") == 0);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"max_index\": 2, \"entries\": [[0, 1, \"1/0\"]]}";
  }
  CHECK(cli(dir, "family --moments bad.json") == 3);

  // A family edited by hand fails orthogonality: exit 1.
  REQUIRE(cli(dir, "family --moments m.json --pairs 1 -o f.json") == 0);
  std::string family = slurp(dir / "f.json");
  const auto at = family.find("\"5/2\"");
  REQUIRE(at != std::string::npos);
  family.replace(at, 5, "\"7/2\"");
  std::ofstream(dir / "f.json", std::ios::trunc) << family;
  CHECK(cli(dir, "verify --suite orthogonality --family f.json --moments m.json -o r.json") == 1);
}

TEST_CASE("Repeated runs are byte-identical") {
  const fs::path dir = scratch("skewflow_cli_determinism");
  for (const char* round : {"a", "b"}) {
    const std::string r = round;
    REQUIRE(cli(dir, "gen-moments --seed 42 --max-index 12 -o m" + r + ".json") == 0);
    REQUIRE(cli(dir, "family --moments m" + r + ".json --pairs 2 -o f" + r + ".json") == 0);
    REQUIRE(cli(dir, "grid --moments m" + r + ".json --mu 2 --lambda=-1/3 --pairs 1 -o g" + r + ".json") == 0);
    REQUIRE(cli(dir, "verify --suite dpfl --grid g" + r + ".json -o d" + r + ".json") == 0);
    REQUIRE(cli(dir, "verify --suite edpfl --grid g" + r + ".json -o e" + r + ".json") == 0);
  }
  for (const char* stem : {"m", "f", "g"}) {
    CHECK(slurp(dir / (std::string(stem) + "a.json")) == slurp(dir / (std::string(stem) + "b.json")));
  }
  for (const char* stem : {"d", "e"}) {
    CHECK(without_elapsed(slurp(dir / (std::string(stem) + "a.json"))) ==
          without_elapsed(slurp(dir / (std::string(stem) + "b.json"))));
  }
}
