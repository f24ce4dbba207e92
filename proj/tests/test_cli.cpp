// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the lprec executable as a subprocess.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run lprec(const std::string& args) {
  const std::string cmd = std::string(LPREC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path work_dir() {
  const fs::path d = fs::path(LPREC_TEST_DIR) / "cli_work";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("threshold values") {
  auto r = lprec("threshold strong-limit --p 1");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["rho_star"].get<double>() == doctest::Approx(0.239).epsilon(0.005));
  r = lprec("threshold weak-limit --p 0.3 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("rho,0.6666666666666666") != std::string::npos);
}

TEST_CASE("sectional certify writes a witness") {
  const std::string b = write("b.csv", "16,16,1,36\n");
  const std::string out = (work_dir() / "cert.json").string();
  fs::remove(out + ".witness.csv");
  const auto r = lprec("certify --matrix " + b + " --mode sectional --p 0.5 --support 1,2 -o " + out);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK_FALSE(j["holds"].get<bool>());
  CHECK(j["witness"]["lhs"].get<double>() == 8.0);
  CHECK(j["witness"]["rhs"].get<double>() == 7.0);
  CHECK(slurp(out) == r.out);
  CHECK(fs::exists(out + ".witness.csv"));

  const auto held = lprec("certify --matrix " + b + " --mode sectional --p 1 --support 1,2");
  REQUIRE(held.code == 0);
  CHECK(nlohmann::json::parse(held.out)["holds"].get<bool>());
}

TEST_CASE("solve from an instance file") {
  const std::string inst =
      write("inst.json", R"({"A": [[1, 0, 1], [0, 1, 1]], "y": [1, 0], "x_true": [1, 0, 0]})");
  const auto r = lprec("solve --instance " + inst + " --method l1");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["recovered"].get<bool>());
}

TEST_CASE("exit codes") {
  CHECK(lprec("").code == 1);
  CHECK(lprec("threshold strong-limit").code == 1);               // missing --p
  CHECK(lprec("threshold strong-limit --p 2").code == 1);         // domain
  CHECK(lprec("solve --instance /nonexistent.json").code == 1);   // missing file
  CHECK(lprec("threshold strong-limit --p 1 -o /nonexistent/dir/x.json").code == 1);
  const std::string bad = write("bad.json", "{\"A\": [[1, 2]], \"y\": ");
  CHECK(lprec("solve --instance " + bad).code == 1);              // parse
  const std::string rank = write("rank.json", R"({"A": [[1, 1, 1], [2, 2, 2]], "y": [1, 2]})");
  CHECK(lprec("solve --instance " + rank + " --method l1").code == 2);
  CHECK(lprec("--version").code == 0);
  CHECK(lprec("--help").code == 0);
}

TEST_CASE("experiment reruns are byte-identical") {
  const std::string spec = write(
      "phase.json", R"({"n": 30, "m": 15, "p_list": [0.5, 1.0], "rho_grid": [0.1, 0.3],
                        "trials_per_point": 5, "seed": 9})");
  const fs::path a = work_dir() / "a.json";
  const fs::path b = work_dir() / "b.json";
  REQUIRE(lprec("experiment phase --spec " + spec + " -o " + a.string()).code == 0);
  REQUIRE(lprec("experiment phase --spec " + spec + " -o " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}
