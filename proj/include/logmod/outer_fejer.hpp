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
#include <functional>

#include "logmod/linalg.hpp"

namespace logmod {

/// Real trigonometric polynomial sum_{k=-m}^{m} c_k e^{ik theta} with
/// c_{-k} = conj(c_k). coeffs holds c_{-m}, ..., c_m.
struct TrigPoly {
  std::size_t degree = 0;
  CVector coeffs;

  cx coeff(long k) const { return coeffs[static_cast<std::size_t>(k + static_cast<long>(degree))]; }
  double evaluate(double theta) const;
  /// Max of |p| on an N-point grid.
  double sup_norm(std::size_t grid = 4096) const;
  double grid_min(std::size_t grid = 4096) const;
};

/// Polynomial a_0 + a_1 z + ... + a_m z^m.
struct AnalyticPoly {
  CVector coeffs;

  cx evaluate(cx z) const;
};

/// Samples of a function on the circle at theta_j = 2 pi j / N, N = 2^grid_log2.
struct BoundaryFunction {
  int grid_log2 = 0;
  CVector values;

  std::size_t size() const { return values.size(); }
  double theta(std::size_t j) const;
};

/// Outer factor q of a nonnegative trigonometric polynomial: |q|^2 = p on
/// the circle, all roots of q in |z| >= 1, q(0) > 0. Throws NotNonnegative
/// or DegenerateLeading.
AnalyticPoly fejer_riesz(const TrigPoly& p, double tol = 1e-10);

/// |q|^2 for q analytic, as a trigonometric polynomial.
TrigPoly modulus_squared(const AnalyticPoly& q);

/// max_j | |q(e^{i theta_j})|^2 - p(theta_j) | over an N-point grid.
double fejer_riesz_error(const TrigPoly& p, const AnalyticPoly& q,
                         std::size_t grid = 4096);

/// Samples f at the 2^grid_log2 grid points.
BoundaryFunction sample(const std::function<double(double)>& f, int grid_log2);

/// Outer factor a = exp((u + i u~)/2), u = log f, u~ the discrete conjugate
/// function. Throws NotPositive when min f < 1e-6.
BoundaryFunction outer_function(const BoundaryFunction& f);

/// 1/a for the outer factor of f, computed as exp(-(u + i u~)/2).
BoundaryFunction outer_inverse(const BoundaryFunction& f);

/// Winding number of a nonvanishing sampled curve around 0.
long winding_number(const BoundaryFunction& a);

struct OuterWitness {
  BoundaryFunction factor;
  double error = 0.0;  // sup of | |a|^2 - f | on the grid and its midpoints
};

/// Outer factor of f whose squared modulus is within eps of f uniformly,
/// checked at the grid points and at the midpoints between them. The grid
/// starts at 2^start_log2 and doubles up to 2^16. Throws NotPositive or
/// PrecisionUnreachable.
OuterWitness logmodular_witness(const std::function<double(double)>& f, double eps,
                                int start_log2 = 6);

/// Unnormalized forward (sign -1) or backward (sign +1) DFT of a
/// power-of-two length sequence.
CVector dft(std::span<const cx> in, int sign);

}  // namespace logmod
