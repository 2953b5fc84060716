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

// Outer factors of positive functions on the circle via the discrete
// conjugate function.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "logmod/error.hpp"
#include "logmod/outer_fejer.hpp"

namespace logmod {
namespace {

constexpr double kFloor = 1e-6;
constexpr int kMaxGridLog2 = 16;

void check_grid(const BoundaryFunction& f) {
  if (f.grid_log2 < 1 || f.grid_log2 > 24 ||
      f.values.size() != (std::size_t{1} << f.grid_log2)) {
    throw Error(ErrorCode::InvalidArgument,
                "boundary function needs 2^grid_log2 samples, grid_log2 >= 1");
  }
}

std::vector<double> positive_samples(const BoundaryFunction& f) {
  check_grid(f);
  std::vector<double> u(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const cx v = f.values[j];
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real()))) {
      throw Error(ErrorCode::NotPositive, "boundary function is not real-valued");
    }
    if (!(v.real() >= kFloor)) {
      throw Error(ErrorCode::NotPositive,
                  "boundary function minimum is below 1e-6 at sample " +
                      std::to_string(j));
    }
    u[j] = v.real();
  }
  return u;
}

// Taylor coefficients (length N) of the analytic polynomial h whose real
// part interpolates log f on the grid and whose imaginary part is the
// discrete conjugate function (multiplier -i sgn k, Nyquist bin zeroed).
CVector log_analytic_coefficients(const std::vector<double>& f) {
  const std::size_t n = f.size();
  CVector u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = std::log(f[j]);
  CVector uhat = dft(u, -1);
  const double inv_n = 1.0 / static_cast<double>(n);
  CVector h(n, cx{});
  h[0] = uhat[0].real() * inv_n;
  for (std::size_t k = 1; k < n / 2; ++k) h[k] = 2.0 * uhat[k] * inv_n;
  h[n / 2] = uhat[n / 2].real() * inv_n;
  return h;
}

// Values of the polynomial with the given coefficients on a grid of
// `points` equispaced nodes (points >= coefficient count).
CVector evaluate_on_grid(const CVector& coeffs, std::size_t points) {
  CVector padded(points, cx{});
  std::copy(coeffs.begin(), coeffs.end(), padded.begin());
  return dft(padded, +1);
}

BoundaryFunction exp_half(const CVector& h_values, int grid_log2, double sign) {
  BoundaryFunction a;
  a.grid_log2 = grid_log2;
  a.values.resize(h_values.size());
  for (std::size_t j = 0; j < h_values.size(); ++j)
    a.values[j] = std::exp(sign * 0.5 * h_values[j]);
  return a;
}

}  // namespace

double BoundaryFunction::theta(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) /
         static_cast<double>(values.size());
}

BoundaryFunction sample(const std::function<double(double)>& f, int grid_log2) {
  BoundaryFunction out;
  out.grid_log2 = grid_log2;
  const std::size_t n = std::size_t{1} << grid_log2;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.values[j] = f(2.0 * std::numbers::pi * static_cast<double>(j) /
                      static_cast<double>(n));
  return out;
}

BoundaryFunction outer_function(const BoundaryFunction& f) {
  const auto samples = positive_samples(f);
  const CVector h = log_analytic_coefficients(samples);
  return exp_half(evaluate_on_grid(h, samples.size()), f.grid_log2, 1.0);
}

BoundaryFunction outer_inverse(const BoundaryFunction& f) {
  const auto samples = positive_samples(f);
  const CVector h = log_analytic_coefficients(samples);
  return exp_half(evaluate_on_grid(h, samples.size()), f.grid_log2, -1.0);
}

long winding_number(const BoundaryFunction& a) {
  double total = 0.0;
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    const cx z0 = a.values[j];
    const cx z1 = a.values[(j + 1) % n];
    if (z0 == cx{} || z1 == cx{}) {
      throw Error(ErrorCode::InvalidArgument, "curve passes through zero");
    }
    total += std::arg(z1 / z0);
  }
  return std::lround(total / (2.0 * std::numbers::pi));
}

OuterWitness logmodular_witness(const std::function<double(double)>& f, double eps,
                                int start_log2) {
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  }
  start_log2 = std::clamp(start_log2, 1, kMaxGridLog2);
  double last_error = INFINITY;
  for (int k = start_log2; k <= kMaxGridLog2; ++k) {
    const BoundaryFunction fs = sample(f, k);
    const auto samples = positive_samples(fs);
    const CVector h = log_analytic_coefficients(samples);
    const std::size_t n = samples.size();
    // The factor is the polynomial exp(h/2); check it on the doubled grid so
    // the midpoints, where nothing was interpolated, are covered.
    const CVector fine = evaluate_on_grid(h, 2 * n);
    double err = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      const double fv = f(theta);
      if (!(fv >= kFloor)) {
        throw Error(ErrorCode::NotPositive, "function minimum is below 1e-6");
      }
      err = std::max(err, std::abs(std::exp(fine[j].real()) - fv));
    }
    last_error = err;
    if (err <= eps) {
      CVector coarse(n);
      for (std::size_t j = 0; j < n; ++j) coarse[j] = fine[2 * j];
      return OuterWitness{exp_half(coarse, k, 1.0), err};
    }
  }
  throw Error(ErrorCode::PrecisionUnreachable,
              "error " + std::to_string(last_error) + " at grid 2^16 exceeds eps");
}

}  // namespace logmod
