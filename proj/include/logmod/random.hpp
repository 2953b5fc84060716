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

#include <cstdint>
#include <random>

#include "logmod/linalg.hpp"

namespace logmod {

/// Seeded generator used by every randomized routine. Two generators built
/// from the same (seed, stream) pair produce the same sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  cx complex_normal();  // E|z|^2 = 1
  std::size_t index(std::size_t n);

  CVector complex_vector(std::size_t n);
  CVector unit_vector(std::size_t n);
  ComplexMatrix complex_matrix(std::size_t rows, std::size_t cols);
  /// B^* B + shift * I with B complex Gaussian.
  ComplexMatrix positive_definite(std::size_t n, double shift);
  ComplexMatrix unitary(std::size_t n);
  /// n x k matrix with orthonormal columns (k <= n).
  ComplexMatrix isometry(std::size_t n, std::size_t k);
  ComplexMatrix hermitian(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace logmod
