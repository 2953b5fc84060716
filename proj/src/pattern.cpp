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

#include "logmod/pattern.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "logmod/error.hpp"

namespace logmod {

Pattern::Pattern(std::size_t n) : n_(n), rows_(n, 0) {
  if (n == 0 || n > kMaxSize) {
    throw Error(ErrorCode::InvalidArgument,
                "pattern size must be in [1, 64], got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) rows_[i] = std::uint64_t{1} << i;
}

Pattern::Pattern(std::size_t n, const std::vector<IndexPair>& pairs)
    : Pattern(n) {
  for (const auto& [i, j] : pairs) insert(i, j);
}

Pattern Pattern::upper_triangular(std::size_t n) {
  Pattern p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) p.insert(i, j);
  return p;
}

Pattern Pattern::lower_triangular(std::size_t n) {
  return upper_triangular(n).transpose();
}

Pattern Pattern::full(std::size_t n) {
  Pattern p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.insert(i, j);
  return p;
}

Pattern Pattern::block_upper_triangular(const std::vector<std::size_t>& sizes) {
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  Pattern p(n);
  std::vector<std::size_t> block;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (std::size_t k = 0; k < sizes[b]; ++k) block.push_back(b);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block[i] <= block[j]) p.insert(i, j);
  return p;
}

void Pattern::insert(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) {
    throw Error(ErrorCode::InvalidArgument, "pattern index out of range");
  }
  rows_[i] |= std::uint64_t{1} << j;
}

std::vector<IndexPair> Pattern::pairs() const {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t Pattern::count() const {
  std::size_t c = 0;
  for (auto r : rows_) c += static_cast<std::size_t>(std::popcount(r));
  return c;
}

bool Pattern::is_transitive() const {
  // (i,k), (k,j) in p => (i,j) in p, i.e. row_i contains row_k for k in row_i.
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k)
      if (contains(i, k) && (rows_[k] & ~rows_[i]) != 0) return false;
  return true;
}

Pattern Pattern::transpose() const {
  Pattern t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (contains(i, j)) t.insert(j, i);
  return t;
}

Pattern Pattern::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length");
  }
  Pattern out(n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (contains(perm[a], perm[b])) out.insert(a, b);
  return out;
}

std::vector<std::size_t> BlockStructure::block_of_position() const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (std::size_t k = 0; k < block_sizes[b]; ++k) out.push_back(b);
  return out;
}

bool BlockStructure::certifies(const Pattern& p) const {
  const std::size_t n = p.size();
  if (permutation.size() != n) return false;
  if (std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0}) != n)
    return false;
  if (std::any_of(block_sizes.begin(), block_sizes.end(),
                  [](std::size_t s) { return s == 0; }))
    return false;
  std::vector<bool> seen(n, false);
  for (auto k : permutation) {
    if (k >= n || seen[k]) return false;
    seen[k] = true;
  }
  return p.permuted(permutation) == Pattern::block_upper_triangular(block_sizes);
}

Pattern transitive_closure(const Pattern& p) {
  // Warshall on row bitsets.
  Pattern out = p;
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t rk = out.row_bits(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (out.contains(i, k)) {
        for (std::size_t j = 0; j < n; ++j)
          if ((rk >> j) & 1u) out.insert(i, j);
      }
    }
  }
  return out;
}

LogmodularVerdict decide_logmodular(const Pattern& p) {
  if (!p.is_transitive()) {
    throw Error(ErrorCode::NotTransitive, "pattern is not transitive");
  }
  const std::size_t n = p.size();
  LogmodularVerdict verdict;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!p.contains(i, j) && !p.contains(j, i)) {
        verdict.logmodular = false;
        verdict.witness = IndexPair{i, j};
        return verdict;
      }
    }
  }
  // Total preorder: the number of predecessors strictly increases from one
  // equivalence class to the next.
  std::vector<std::size_t> preds(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.contains(j, i)) ++preds[i];
  BlockStructure cert;
  cert.permutation.resize(n);
  std::iota(cert.permutation.begin(), cert.permutation.end(), 0);
  std::stable_sort(cert.permutation.begin(), cert.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return preds[a] < preds[b]; });
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || preds[cert.permutation[k]] != preds[cert.permutation[k - 1]]) {
      cert.block_sizes.push_back(1);
    } else {
      ++cert.block_sizes.back();
    }
  }
  verdict.logmodular = true;
  verdict.certificate = std::move(cert);
  return verdict;
}

std::vector<Pattern> enumerate_patterns(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "pattern size must be positive");
  }
  if (n > 4) {
    throw Error(ErrorCode::TooLarge, "enumeration supports n <= 4");
  }
  std::vector<IndexPair> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off.emplace_back(i, j);
  std::vector<Pattern> out;
  const std::uint32_t total = std::uint32_t{1} << off.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    Pattern p(n);
    for (std::size_t b = 0; b < off.size(); ++b)
      if ((mask >> b) & 1u) p.insert(off[b].first, off[b].second);
    if (p.is_transitive()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace logmod
