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

#include <algorithm>
#include <set>

#include "catch_amalgamated.hpp"
#include "logmod/error.hpp"
#include "logmod/pattern.hpp"

using namespace logmod;

namespace {

// Independent oracle: count relations on n points (diagonal bits included)
// that are reflexive and transitive, by triple loops over an n x n table.
std::size_t count_preorders(std::size_t n) {
  const std::size_t bits = n * n;
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    auto rel = [&](std::size_t i, std::size_t j) { return (mask >> (i * n + j)) & 1u; };
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = rel(i, i);
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        for (std::size_t k = 0; k < n && ok; ++k)
          if (rel(i, j) && rel(j, k) && !rel(i, k)) ok = false;
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("transitive_closure", "[pattern]") {
  const Pattern diag = Pattern::diagonal(2);
  CHECK(transitive_closure(diag) == diag);

  Pattern chain(3, {{0, 1}, {1, 2}});
  const Pattern closed = transitive_closure(chain);
  CHECK(closed.contains(0, 2));
  CHECK(closed == Pattern::upper_triangular(3));
  CHECK(transitive_closure(closed) == closed);

  CHECK(transitive_closure(Pattern::full(4)) == Pattern::full(4));
}

TEST_CASE("decide_logmodular worked examples", "[pattern]") {
  SECTION("upper triangular") {
    const auto v = decide_logmodular(Pattern::upper_triangular(3));
    REQUIRE(v.logmodular);
    CHECK(v.certificate->permutation == std::vector<std::size_t>{0, 1, 2});
    CHECK(v.certificate->block_sizes == std::vector<std::size_t>{1, 1, 1});
    CHECK_FALSE(v.witness.has_value());
  }
  SECTION("full pattern is a single block") {
    const auto v = decide_logmodular(Pattern::full(4));
    REQUIRE(v.logmodular);
    CHECK(v.certificate->block_sizes == std::vector<std::size_t>{4});
  }
  SECTION("diagonal pattern is not logmodular") {
    const auto v = decide_logmodular(Pattern::diagonal(2));
    REQUIRE_FALSE(v.logmodular);
    CHECK(*v.witness == IndexPair{0, 1});
    CHECK_FALSE(v.certificate.has_value());
  }
  SECTION("lower triangular reverses the order") {
    const auto v = decide_logmodular(Pattern::lower_triangular(3));
    REQUIRE(v.logmodular);
    CHECK(v.certificate->permutation == std::vector<std::size_t>{2, 1, 0});
    CHECK(v.certificate->block_sizes == std::vector<std::size_t>{1, 1, 1});
  }
  SECTION("mixed blocks") {
    // {0,2} form a class below {1}.
    Pattern p(3, {{0, 2}, {2, 0}, {0, 1}, {2, 1}});
    const auto v = decide_logmodular(p);
    REQUIRE(v.logmodular);
    CHECK(v.certificate->permutation == std::vector<std::size_t>{0, 2, 1});
    CHECK(v.certificate->block_sizes == std::vector<std::size_t>{2, 1});
    CHECK(v.certificate->certifies(p));
  }
  SECTION("witness is the lexicographically least incomparable pair") {
    Pattern p(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto v = decide_logmodular(p);
    REQUIRE_FALSE(v.logmodular);
    CHECK(*v.witness == IndexPair{1, 2});
  }
  SECTION("non-transitive input") {
    try {
      decide_logmodular(Pattern(3, {{0, 1}, {1, 2}}));
      FAIL("expected NotTransitive");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotTransitive);
    }
  }
}

TEST_CASE("enumerate_patterns counts preorders", "[pattern]") {
  CHECK(enumerate_patterns(1).size() == 1);
  CHECK(enumerate_patterns(2).size() == 4);
  CHECK(count_preorders(3) == 29);
  CHECK(enumerate_patterns(3).size() == count_preorders(3));
  CHECK(enumerate_patterns(4).size() == 355);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = enumerate_patterns(n);
    std::set<std::vector<IndexPair>> distinct;
    for (const auto& p : all) {
      CHECK(p.is_transitive());
      distinct.insert(p.pairs());
    }
    CHECK(distinct.size() == all.size());
  }
  const auto two = enumerate_patterns(2);
  for (const auto& p : {Pattern::diagonal(2), Pattern::upper_triangular(2),
                        Pattern::lower_triangular(2), Pattern::full(2)}) {
    CHECK(std::find(two.begin(), two.end(), p) != two.end());
  }
  CHECK_THROWS_AS(enumerate_patterns(5), Error);
}

TEST_CASE("verdict properties over all small patterns", "[pattern][property]") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& p : enumerate_patterns(n)) {
      const auto v = decide_logmodular(p);
      const auto vt = decide_logmodular(p.transpose());
      REQUIRE(v.logmodular == vt.logmodular);
      REQUIRE(v.logmodular == v.certificate.has_value());
      REQUIRE(v.logmodular != v.witness.has_value());
      if (v.logmodular) {
        REQUIRE(v.certificate->certifies(p));
        REQUIRE(vt.certificate->certifies(p.transpose()));
        // Transposing reverses the order of the classes.
        auto sizes = v.certificate->block_sizes;
        std::reverse(sizes.begin(), sizes.end());
        REQUIRE(vt.certificate->block_sizes == sizes);
        const auto blocks = v.certificate->block_of_position();
        const auto blocks_t = vt.certificate->block_of_position();
        const std::size_t k = sizes.size();
        for (std::size_t a = 0; a < n; ++a) {
          const std::size_t i = v.certificate->permutation[a];
          const auto pos_t = std::find(vt.certificate->permutation.begin(),
                                       vt.certificate->permutation.end(), i) -
                             vt.certificate->permutation.begin();
          REQUIRE(blocks_t[static_cast<std::size_t>(pos_t)] == k - 1 - blocks[a]);
        }
      } else {
        const auto [i, j] = *v.witness;
        REQUIRE_FALSE(p.contains(i, j));
        REQUIRE_FALSE(p.contains(j, i));
      }
    }
  }
}
