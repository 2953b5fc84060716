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
#include <vector>

#include "logmod/linalg.hpp"
#include "logmod/pattern.hpp"

namespace logmod {

struct FactorResult {
  ComplexMatrix factor;  // supported on the pattern; off-pattern entries are 0
  double residual = 0.0;  // ||A^* A - P||_F
  bool converged = false;
  std::size_t best_start = 0;
  /// Residual after each accepted step of the winning start.
  std::vector<double> history;
};

struct FactorOptions {
  int starts = 20;
  int iters = 2000;
  std::uint64_t seed = 0;
  double residual_tol = 1e-12;   // stop once ||A^*A - P||_F is below this
  double armijo = 1e-4;
  double shrink = 0.5;
  double psd_tol = 1e-10;
};

/// A with A^* A = P and A supported on the block upper triangular pattern
/// certified by cert. Throws NotPSD.
ComplexMatrix structured_cholesky(const ComplexMatrix& p, const BlockStructure& cert);

/// Residual ||A^* A - P||_F.
double factor_residual(const ComplexMatrix& a, const ComplexMatrix& p);

/// Multistart projected gradient descent on ||A^* A - P||_F^2 over matrices
/// supported on the pattern. Deterministic for a fixed seed; starts may run
/// concurrently. Throws NotPSD.
FactorResult factor_attempt(const ComplexMatrix& p, const Pattern& pattern,
                            const FactorOptions& opts = {});

struct Refutation {
  ComplexMatrix test_matrix;  // I + E_ii + E_ij + E_ji + E_jj
  double residual_bound = 0.0;
  bool certified = false;  // residual_bound > 0.1
};

/// Builds the positive definite test matrix for an incomparable pair and
/// reports the least residual reached by factor_attempt over 20 starts.
/// Throws WitnessInvalid if the pair is comparable.
Refutation refute_logmodular(const Pattern& pattern, IndexPair witness,
                             std::uint64_t seed = 0, int iters = 500);

}  // namespace logmod
