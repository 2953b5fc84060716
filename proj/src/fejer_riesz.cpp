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
#include <cmath>
#include <numbers>
#include <optional>

#include "logmod/error.hpp"
#include "logmod/outer_fejer.hpp"

namespace logmod {
namespace {

constexpr double kCircleBand = 1e-5;

double circle_theta(std::size_t j, std::size_t grid) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
}

// P(z) = sum_k c_{k-m} z^k, so that p(theta) = e^{-i m theta} P(e^{i theta}).
cx horner(const CVector& p, cx z, cx* derivative) {
  cx value{};
  cx slope{};
  for (std::size_t k = p.size(); k-- > 0;) {
    slope = slope * z + value;
    value = value * z + p[k];
  }
  if (derivative != nullptr) *derivative = slope;
  return value;
}

cx newton_polish(const CVector& p, cx z) {
  for (int it = 0; it < 8; ++it) {
    cx d;
    const cx v = horner(p, z, &d);
    if (d == cx{}) break;
    const cx step = v / d;
    const cx next = z - step;
    if (!(std::abs(horner(p, next, nullptr)) < std::abs(v))) break;
    z = next;
    if (std::abs(step) <= 1e-16 * std::abs(z)) break;
  }
  return z;
}

CVector polynomial_roots(const CVector& p) {
  const std::size_t d = p.size() - 1;
  ComplexMatrix companion(d, d);
  for (std::size_t k = 0; k < d; ++k) companion(0, k) = -p[d - 1 - k] / p[d];
  for (std::size_t k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  CVector roots = eigenvalues(companion);
  for (auto& r : roots) r = newton_polish(p, r);
  return roots;
}

// Roots outside the closed disc plus one representative of each pair of
// roots sitting on the circle. Empty when the roots cannot be split so.
std::optional<CVector> select_roots(CVector roots, std::size_t m) {
  CVector outside;
  CVector boundary;
  for (const cx& r : roots) {
    const double mod = std::abs(r);
    if (std::abs(mod - 1.0) < kCircleBand) {
      boundary.push_back(r);
    } else if (mod > 1.0) {
      outside.push_back(r);
    }
  }
  if (boundary.size() % 2 != 0 || outside.size() + boundary.size() / 2 != m) {
    return std::nullopt;
  }
  std::vector<bool> used(boundary.size(), false);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (used[i]) continue;
    std::size_t best = boundary.size();
    double best_dist = INFINITY;
    for (std::size_t j = i + 1; j < boundary.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(boundary[i] - boundary[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == boundary.size() || best_dist > 1e-3) return std::nullopt;
    used[i] = used[best] = true;
    const cx mean = 0.5 * (boundary[i] + boundary[best]);
    outside.push_back(mean / std::abs(mean));
  }
  return outside;
}

AnalyticPoly factor_from_roots(const CVector& roots, cx leading) {
  // |q|^2 = |c_m| prod |z - r|^2 / |r| on the circle.
  double k_mod = std::abs(leading);
  cx at_zero{1.0, 0.0};
  for (const cx& r : roots) {
    k_mod /= std::abs(r);
    at_zero *= -r;
  }
  const cx k = std::sqrt(k_mod) * std::conj(at_zero) / std::abs(at_zero);
  CVector q{k};
  for (const cx& r : roots) {
    CVector next(q.size() + 1, cx{});
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i + 1] += q[i];
      next[i] -= r * q[i];
    }
    q = std::move(next);
  }
  // q(0) is real positive up to rounding; make it exactly so.
  q[0] = cx{std::abs(q[0]), 0.0};
  return AnalyticPoly{std::move(q)};
}

std::optional<AnalyticPoly> factor_once(const TrigPoly& p) {
  const std::size_t m = p.degree;
  CVector shifted(p.coeffs.begin(), p.coeffs.end());
  auto roots = select_roots(polynomial_roots(shifted), m);
  if (!roots) return std::nullopt;
  return factor_from_roots(*roots, p.coeff(static_cast<long>(m)));
}

}  // namespace

double TrigPoly::evaluate(double theta) const {
  const long m = static_cast<long>(degree);
  cx acc = coeff(0);
  for (long k = 1; k <= m; ++k) {
    acc += 2.0 * coeff(k) * std::polar(1.0, static_cast<double>(k) * theta);
  }
  // Uses c_{-k} = conj(c_k); the imaginary part of c_0 is ignored.
  return acc.real();
}

double TrigPoly::sup_norm(std::size_t grid) const {
  double best = 0.0;
  for (std::size_t j = 0; j < grid; ++j)
    best = std::max(best, std::abs(evaluate(circle_theta(j, grid))));
  return best;
}

double TrigPoly::grid_min(std::size_t grid) const {
  double best = INFINITY;
  for (std::size_t j = 0; j < grid; ++j)
    best = std::min(best, evaluate(circle_theta(j, grid)));
  return best;
}

cx AnalyticPoly::evaluate(cx z) const {
  cx acc{};
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

TrigPoly modulus_squared(const AnalyticPoly& q) {
  const std::size_t m = q.coeffs.empty() ? 0 : q.coeffs.size() - 1;
  TrigPoly p;
  p.degree = m;
  p.coeffs.assign(2 * m + 1, cx{});
  for (std::size_t k = 0; k <= m && !q.coeffs.empty(); ++k) {
    cx c{};
    for (std::size_t j = 0; j + k <= m; ++j) c += q.coeffs[j + k] * std::conj(q.coeffs[j]);
    p.coeffs[m + k] = c;
    p.coeffs[m - k] = std::conj(c);
  }
  return p;
}

double fejer_riesz_error(const TrigPoly& p, const AnalyticPoly& q, std::size_t grid) {
  double err = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double theta = circle_theta(j, grid);
    err = std::max(err, std::abs(std::norm(q.evaluate(std::polar(1.0, theta))) -
                                 p.evaluate(theta)));
  }
  return err;
}

AnalyticPoly fejer_riesz(const TrigPoly& p, double tol) {
  const std::size_t m = p.degree;
  if (p.coeffs.size() != 2 * m + 1) {
    throw Error(ErrorCode::InvalidArgument, "trigonometric polynomial needs 2m+1 coefficients");
  }
  double scale = 0.0;
  for (const cx& c : p.coeffs) scale = std::max(scale, std::abs(c));
  for (std::size_t k = 0; k <= m; ++k) {
    if (std::abs(p.coeffs[m + k] - std::conj(p.coeffs[m - k])) > 1e-12 * (1.0 + scale)) {
      throw Error(ErrorCode::NotHermitian, "coefficients are not conjugate symmetric");
    }
  }
  const double sup = p.sup_norm();
  const double low = p.grid_min();
  if (low < -tol * (1.0 + sup)) {
    throw Error(ErrorCode::NotNonnegative,
                "polynomial takes the value " + std::to_string(low) + " on the circle");
  }
  if (m == 0) {
    return AnalyticPoly{CVector{cx{std::sqrt(std::max(0.0, p.coeffs[0].real())), 0.0}}};
  }
  if (std::abs(p.coeff(static_cast<long>(m))) <= 1e-14 * (1.0 + scale)) {
    throw Error(ErrorCode::DegenerateLeading, "leading coefficient vanishes");
  }

  const double accept = 1e-8 * (1.0 + sup);
  std::optional<AnalyticPoly> best = factor_once(p);
  double best_err = best ? fejer_riesz_error(p, *best) : INFINITY;
  if (best_err > accept) {
    // Boundary roots of high multiplicity may not split cleanly; lift p off
    // the circle by a tiny constant and factor again.
    TrigPoly lifted = p;
    lifted.coeffs[m] += 1e-10 * (1.0 + sup);
    if (auto alt = factor_once(lifted)) {
      const double err = fejer_riesz_error(p, *alt);
      if (err < best_err) {
        best = std::move(alt);
        best_err = err;
      }
    }
  }
  if (!best) {
    throw Error(ErrorCode::NoConvergence, "could not split the roots across the circle");
  }
  return *best;
}

}  // namespace logmod
