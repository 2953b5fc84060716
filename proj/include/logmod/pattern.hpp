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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace logmod {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Support pattern of a subalgebra D_n <= A <= M_n: the set of matrix units
/// E_{i,j} that belong to A. Indices are 0-based; n <= 64. The diagonal is
/// always present.
class Pattern {
 public:
  static constexpr std::size_t kMaxSize = 64;

  /// Diagonal pattern of size n.
  explicit Pattern(std::size_t n);
  /// Diagonal plus the given pairs.
  Pattern(std::size_t n, const std::vector<IndexPair>& pairs);

  static Pattern diagonal(std::size_t n) { return Pattern(n); }
  static Pattern upper_triangular(std::size_t n);
  static Pattern lower_triangular(std::size_t n);
  static Pattern full(std::size_t n);
  /// { (i,j) : block(i) <= block(j) } for consecutive blocks of the given sizes.
  static Pattern block_upper_triangular(const std::vector<std::size_t>& sizes);

  std::size_t size() const noexcept { return n_; }
  bool contains(std::size_t i, std::size_t j) const {
    return (rows_[i] >> j) & 1u;
  }
  void insert(std::size_t i, std::size_t j);
  std::uint64_t row_bits(std::size_t i) const { return rows_[i]; }

  /// Pairs in lexicographic order.
  std::vector<IndexPair> pairs() const;
  std::size_t count() const;
  bool is_transitive() const;
  Pattern transpose() const;
  /// Relabels index perm[k] as k.
  Pattern permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> rows_;
};

/// A permutation plus ordered block sizes. permutation[k] is the original
/// index placed at position k.
struct BlockStructure {
  std::vector<std::size_t> permutation;
  std::vector<std::size_t> block_sizes;

  /// Block index of each position.
  std::vector<std::size_t> block_of_position() const;
  /// True when relabeling p by the permutation gives exactly the block upper
  /// triangular pattern with these sizes.
  bool certifies(const Pattern& p) const;

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;
};

struct LogmodularVerdict {
  bool logmodular = false;
  std::optional<BlockStructure> certificate;  // when logmodular
  std::optional<IndexPair> witness;           // when not: incomparable pair
};

/// Smallest transitive superset.
Pattern transitive_closure(const Pattern& p);

/// Logmodular iff the preorder i <= j <=> (i,j) in p is total. Throws
/// NotTransitive if p is not transitive.
LogmodularVerdict decide_logmodular(const Pattern& p);

/// All reflexive transitive patterns of size n <= 4, in a fixed order.
/// Throws TooLarge for n > 4.
std::vector<Pattern> enumerate_patterns(std::size_t n);

}  // namespace logmod
