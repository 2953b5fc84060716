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

#include "logmod/structured_factor.hpp"

#include <cmath>
#include <limits>

#include "logmod/error.hpp"
#include "logmod/parallel.hpp"
#include "logmod/random.hpp"

namespace logmod {
namespace {

void check_psd(const ComplexMatrix& p, double tol) {
  if (!p.is_square()) {
    throw Error(ErrorCode::NotPSD, "matrix is not square");
  }
  if (!is_hermitian(p, 1e-12)) {
    throw Error(ErrorCode::NotPSD, "matrix is not Hermitian");
  }
  if (min_eigenvalue(p) < -tol) {
    throw Error(ErrorCode::NotPSD, "matrix has a negative eigenvalue");
  }
}

void project(ComplexMatrix& a, const Pattern& pattern) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!pattern.contains(i, j)) a(i, j) = 0.0;
}

double objective(const ComplexMatrix& a, const ComplexMatrix& p) {
  const double r = factor_residual(a, p);
  return r * r;
}

struct StartOutcome {
  ComplexMatrix factor;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::vector<double> history;
};

StartOutcome descend(const ComplexMatrix& p, const Pattern& pattern,
                     const FactorOptions& opts, std::size_t start) {
  const std::size_t n = p.rows();
  Rng rng(opts.seed, start);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pattern.contains(i, j)) a(i, j) = rng.complex_normal();
  // Scale so that ||A0^* A0||_F = ||P||_F.
  const double pn = p.frobenius_norm();
  const double an = adjoint_times(a, a).frobenius_norm();
  if (an > 0.0 && pn > 0.0) a *= std::sqrt(pn / an);

  StartOutcome out;
  double f = objective(a, p);
  out.history.push_back(std::sqrt(f));
  double step = 1.0 / std::max(1.0, pn);
  bool stalled = false;
  for (int it = 0; it < opts.iters; ++it) {
    if (std::sqrt(f) <= opts.residual_tol) {
      out.converged = true;
      break;
    }
    // Real gradient of ||A^*A - P||_F^2 is 4 A (A^*A - P); project to support.
    ComplexMatrix r = adjoint_times(a, a) - p;
    ComplexMatrix g = a * r;
    g *= 4.0;
    project(g, pattern);
    const double gg = real_inner(g, g);
    if (gg == 0.0) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double trial_step = step * 2.0;
    for (int ls = 0; ls < 80; ++ls) {
      ComplexMatrix trial = a - trial_step * g;
      const double ft = objective(trial, p);
      if (ft <= f - opts.armijo * trial_step * gg) {
        a = std::move(trial);
        f = ft;
        step = trial_step;
        accepted = true;
        break;
      }
      trial_step *= opts.shrink;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    out.history.push_back(std::sqrt(f));
  }
  out.residual = std::sqrt(f);
  out.converged = out.converged || stalled || out.residual <= opts.residual_tol;
  out.factor = std::move(a);
  return out;
}

}  // namespace

double factor_residual(const ComplexMatrix& a, const ComplexMatrix& p) {
  return (adjoint_times(a, a) - p).frobenius_norm();
}

ComplexMatrix structured_cholesky(const ComplexMatrix& p, const BlockStructure& cert) {
  check_psd(p, 1e-10);
  const std::size_t n = p.rows();
  if (cert.permutation.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "certificate size differs from matrix");
  }
  const auto& perm = cert.permutation;
  ComplexMatrix permuted(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) permuted(a, b) = p(perm[a], perm[b]);
  const ComplexMatrix u = cholesky(permuted, 1e-10);
  ComplexMatrix out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out(perm[a], perm[b]) = u(a, b);
  return out;
}

FactorResult factor_attempt(const ComplexMatrix& p, const Pattern& pattern,
                            const FactorOptions& opts) {
  check_psd(p, opts.psd_tol);
  if (pattern.size() != p.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "pattern size differs from matrix");
  }
  if (opts.starts < 1) {
    throw Error(ErrorCode::InvalidArgument, "starts must be at least 1");
  }
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(opts.starts));
  parallel_for(outcomes.size(), [&](std::size_t s) {
    outcomes[s] = descend(p, pattern, opts, s);
  });
  std::size_t best = 0;
  for (std::size_t s = 1; s < outcomes.size(); ++s)
    if (outcomes[s].residual < outcomes[best].residual) best = s;
  FactorResult result;
  result.factor = std::move(outcomes[best].factor);
  result.residual = factor_residual(result.factor, p);
  result.converged = outcomes[best].converged;
  result.best_start = best;
  result.history = std::move(outcomes[best].history);
  return result;
}

Refutation refute_logmodular(const Pattern& pattern, IndexPair witness,
                             std::uint64_t seed, int iters) {
  const auto [i, j] = witness;
  const std::size_t n = pattern.size();
  if (i >= n || j >= n || i == j) {
    throw Error(ErrorCode::WitnessInvalid, "witness indices out of range");
  }
  if (pattern.contains(i, j) || pattern.contains(j, i)) {
    throw Error(ErrorCode::WitnessInvalid, "witness pair is comparable");
  }
  Refutation out;
  out.test_matrix = ComplexMatrix::identity(n);
  out.test_matrix(i, i) += 1.0;
  out.test_matrix(i, j) += 1.0;
  out.test_matrix(j, i) += 1.0;
  out.test_matrix(j, j) += 1.0;
  FactorOptions opts;
  opts.starts = 20;
  opts.iters = iters;
  opts.seed = seed;
  const FactorResult fr = factor_attempt(out.test_matrix, pattern, opts);
  out.residual_bound = fr.residual;
  out.certified = fr.residual > 0.1;
  return out;
}

}  // namespace logmod
