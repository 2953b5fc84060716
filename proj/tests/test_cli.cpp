// Copyright 2026 The logmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "io.hpp"
#include "logmod/error.hpp"
#include "logmod/random.hpp"

using namespace logmod;
using io::json;

namespace {

const std::string kCli = LOGMOD_CLI;
const std::string kData = LOGMOD_TEST_DATA;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return kData + "/" + name; }

template <class T, class Decode>
void check_round_trip(const T& value, Decode decode) {
  const std::string first = io::dump(io::encode(value));
  const std::string second = io::dump(io::encode(decode(io::parse(first))));
  CHECK(first == second);
}

}  // namespace

TEST_CASE("emitted files re-parse to the same text") {
  Rng rng(0, 1);
  for (int t = 0; t < 50; ++t) {
    const auto a = rng.complex_matrix(1 + rng.index(5), 1 + rng.index(5));
    check_round_trip(a, io::decode_matrix);
    check_round_trip(AnalyticPoly{rng.complex_vector(1 + rng.index(6))}, io::decode_analytic_poly);
    const std::size_t m = rng.index(4);
    check_round_trip(TrigPoly{m, rng.complex_vector(2 * m + 1)}, io::decode_trig_poly);
    check_round_trip(BoundaryFunction{3, rng.complex_vector(8)}, io::decode_boundary);
  }
  for (const auto& p : enumerate_patterns(3)) check_round_trip(p, io::decode_pattern);

  FunctionBasis fb{4, {rng.complex_vector(4), rng.complex_vector(4)}};
  check_round_trip(SubspaceMap{fb, {rng.complex_vector(2), rng.complex_vector(2)}},
                   io::decode_subspace_map);
  const auto p = Pattern::block_upper_triangular({1, 2});
  check_round_trip(direct_sum(identity_representation(p), corner_representation(p)),
                   io::decode_representation);
}

TEST_CASE("decoded values equal the originals") {
  Rng rng(0, 2);
  const auto a = rng.complex_matrix(3, 2);
  const auto back = io::decode_matrix(io::parse(io::dump(io::encode(a))));
  CHECK((back - a).max_abs() == 0.0);
  const auto p = io::decode_pattern(io::parse(R"({"n": 3, "pairs": [[1, 3]]})"));
  CHECK(p.contains(0, 2));
  CHECK_FALSE(p.contains(2, 0));
  CHECK(p.count() == 4);
}

TEST_CASE("malformed input raises ParseError") {
  const char* bad[] = {
      R"({"rows": 2, "cols": 2, "data": [[1, 0]]})",
      R"({"rows": 1, "cols": 1, "data": [[1, 0, 0]]})",
      R"({"rows": -1, "cols": 1, "data": []})",
      R"({"cols": 1, "data": []})",
  };
  for (const char* text : bad) {
    try {
      io::decode_matrix(io::parse(text));
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  CHECK_THROWS_AS(io::decode_pattern(io::parse(R"({"n": 2, "pairs": [[0, 1]]})")), Error);
  CHECK_THROWS_AS(io::decode_trig_poly(io::parse(R"({"degree": 1, "coeffs": [[1, 0]]})")), Error);
  CHECK_THROWS_AS(io::decode_boundary(io::parse(R"({"grid_log2": 2, "values": [[1, 0]]})")), Error);
  CHECK_THROWS_AS(io::parse("{"), Error);
}

TEST_CASE("decide reports verdicts through exit codes") {
  auto yes = run("decide " + data("ut3.json"));
  CHECK(yes.code == 0);
  const auto report = io::parse(yes.out);
  CHECK(report["result"]["verdict"] == "logmodular");
  CHECK(report["result"]["certificate"]["blocks"] == json::array({1, 1, 1}));
  CHECK(report["seed"] == 0);

  auto no = run("decide " + data("diag2.json") + " --seed 7");
  CHECK(no.code == 2);
  const auto neg = io::parse(no.out);
  CHECK(neg["result"]["verdict"] == "not logmodular");
  CHECK(neg["result"]["witness"] == json::array({1, 2}));
  CHECK(neg["seed"] == 7);

  CHECK(run("decide " + data("malformed.json")).code == 64);
  CHECK(run("decide " + data("missing.json")).code == 64);
  CHECK(run("").code == 64);
}

TEST_CASE("factor uses the structured route when possible") {
  auto r = run("factor " + data("p2.json") + " " + data("ut2.json"));
  CHECK(r.code == 0);
  const auto report = io::parse(r.out);
  CHECK(report["route"] == "structured");
  const auto a = io::decode_matrix(report["result"]);
  // Hand Cholesky of [[2,1],[1,1]] with A upper triangular, A*A = P.
  CHECK(std::abs(a(0, 0) - cx{std::sqrt(2.0)}) < 1e-14);
  CHECK(std::abs(a(0, 1) - cx{1.0 / std::sqrt(2.0)}) < 1e-14);
  CHECK(std::abs(a(1, 0)) == 0.0);
  CHECK(std::abs(a(1, 1) - cx{1.0 / std::sqrt(2.0)}) < 1e-14);

  auto floor = run("factor " + data("p2.json") + " " + data("diag2.json"));
  CHECK(floor.code == 2);
  CHECK(io::parse(floor.out)["residual"].get<double>() > 0.1);
}

TEST_CASE("fejer and outer write factor files") {
  const auto out = std::filesystem::temp_directory_path() / "logmod_fejer_out.json";
  auto r = run("fejer " + data("two_plus_two_cos.json") + " --out " + out.string());
  CHECK(r.code == 0);
  const auto q = io::decode_analytic_poly(io::read_file(out.string()));
  REQUIRE(q.coeffs.size() == 2);
  CHECK(std::abs(q.coeffs[0] - 1.0) < 1e-10);
  CHECK(std::abs(q.coeffs[1] - 1.0) < 1e-10);
  // Re-emitting the written file reproduces it byte for byte.
  CHECK(io::dump(io::encode(q)) == io::dump(io::read_file(out.string())));
  std::filesystem::remove(out);

  auto o = run("outer " + data("outer64.json"));
  CHECK(o.code == 0);
  const auto report = io::parse(o.out);
  CHECK(report["grid_error"].get<double>() < 1e-12);
  CHECK(report["midpoint_error"].get<double>() < 1e-6);
  CHECK(report["winding_number"] == 0);
  CHECK(run("outer " + data("negative.json")).code == 2);
}

TEST_CASE("a2, dominate and extend") {
  auto a2 = run("a2 " + data("functions.json"));
  CHECK(a2.code == 0);
  CHECK(io::parse(a2.out)["sampled_slack"].get<double>() >= -1e-8);

  auto state = run("dominate " + data("first_row2.json"));
  CHECK(state.code == 0);
  CHECK(std::abs(io::parse(state.out)["result"]["value"].get<double>() - 1.0) < 1e-6);

  auto ext = run("extend " + data("ut2_identity.json"));
  CHECK(ext.code == 0);
  const auto report = io::parse(ext.out);
  CHECK(report["extension_error"].get<double>() <= 1e-7);
  const auto choi = io::decode_matrix(report["result"]["choi"]);
  CHECK(choi.rows() == 4);
  CHECK(run("extend " + data("ut2_doubled.json")).code == 2);
}
