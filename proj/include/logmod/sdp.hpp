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
#include <vector>

#include "logmod/error.hpp"
#include "logmod/linalg.hpp"

namespace logmod {

/// One term y_var * coeff of a linear matrix inequality block.
struct LmiTerm {
  std::size_t var = 0;
  ComplexMatrix coeff;  // Hermitian
};

/// constant - sum_t y_{t.var} t.coeff >= 0 (Hermitian positive semidefinite).
struct LmiBlock {
  ComplexMatrix constant;
  std::vector<LmiTerm> terms;
};

/// maximize objective . y subject to every block being positive semidefinite.
///
/// The variables y are free. Nonnegativity of a variable is a 1x1 block.
struct BlockLmi {
  std::size_t vars = 0;
  std::vector<double> objective;
  std::vector<LmiBlock> blocks;
};

struct SdpOptions {
  int max_iter = 150;
  double tol = 1e-10;     // relative infeasibility and gap for convergence
  double accept = 1e-7;   // best iterate accepted at the cap if within this
};

struct BlockLmiSolution {
  std::vector<double> y;
  std::vector<ComplexMatrix> slack;  // constant - sum y A per block
  std::vector<ComplexMatrix> dual;   // X per block, Re tr(A_k X) = objective_k
  double primal_objective = 0.0;     // objective . y
  double dual_objective = 0.0;       // sum <constant, X>
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
};

/// Primal-dual interior point method (HKM direction, Mehrotra
/// predictor-corrector, infeasible start). Deterministic. Throws
/// NoConvergence when neither the iteration cap nor a stall yields an
/// acceptable iterate, DimensionMismatch on malformed input.
BlockLmiSolution solve_block_lmi(const BlockLmi& problem, const SdpOptions& opts = {});

/// minimize sum costs_i nu_i subject to sum nu_i V_i >= G, nu >= 0.
struct LMIProblem {
  ComplexMatrix target;                 // G
  std::vector<ComplexMatrix> generators;  // V_i, positive semidefinite
  std::vector<double> costs;            // empty means all ones
};

struct LmiSolution {
  std::vector<double> weights;  // nu
  ComplexMatrix dual;           // Z >= 0 with <V_i, Z> <= costs_i
  double objective = 0.0;       // sum costs nu
  double gap = 0.0;             // |objective - <G, Z>|
  double slack = 0.0;           // min eigenvalue of sum nu V - G
};

/// Raised when no nonnegative combination of the generators can dominate
/// the target. certificate() is a unit vector v with V_i v = 0 for all i
/// and either v^* G v > 0 or G v != 0.
class LmiInfeasible : public Error {
 public:
  LmiInfeasible(const std::string& what, CVector certificate)
      : Error(ErrorCode::Infeasible, what), certificate_(std::move(certificate)) {}

  const CVector& certificate() const noexcept { return certificate_; }

 private:
  CVector certificate_;
};

/// Solves the canonical domination problem. Throws LmiInfeasible,
/// NoConvergence, DimensionMismatch, TooLarge (d > 64 or more than 4096
/// generators) or InvalidArgument (negative costs, non-Hermitian data).
LmiSolution solve_lmi(const LMIProblem& problem, double tol = 1e-8);

}  // namespace logmod
