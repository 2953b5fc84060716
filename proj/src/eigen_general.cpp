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

// General complex eigenvalues: balancing, Householder reduction to upper
// Hessenberg form, then single-shift QR with Wilkinson shifts and
// deflation. Only eigenvalues are accumulated.

#include <cmath>
#include <limits>

#include "logmod/error.hpp"
#include "logmod/linalg.hpp"

namespace logmod {
namespace {

double abs1(cx z) { return std::abs(z.real()) + std::abs(z.imag()); }

void balance(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cx x0 = a(k + 1, k);
    const cx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cx{1.0};
    const cx alpha = -phase * xnorm;
    CVector v(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = a(i, k);
    v[0] -= alpha;
    const double vnorm = norm(v);
    if (vnorm == 0.0) continue;
    for (auto& z : v) z /= vnorm;
    // A <- (I - 2 v v^*) A
    for (std::size_t j = 0; j < n; ++j) {
      cx s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
      for (std::size_t i = 0; i < v.size(); ++i) a(k + 1 + i, j) -= 2.0 * v[i] * s;
    }
    // A <- A (I - 2 v v^*)
    for (std::size_t i = 0; i < n; ++i) {
      cx s = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) s += a(i, k + 1 + j) * v[j];
      for (std::size_t j = 0; j < v.size(); ++j)
        a(i, k + 1 + j) -= 2.0 * s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

cx wilkinson_shift(cx a, cx b, cx c, cx d) {
  const cx half_tr = 0.5 * (a + d);
  const cx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cx l1 = half_tr + disc;
  const cx l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

CVector eigenvalues(const ComplexMatrix& input, int max_iter_per_value) {
  if (!input.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalues of non-square matrix");
  }
  const std::size_t n = input.rows();
  CVector out;
  if (n == 0) return out;
  ComplexMatrix h = input;
  balance(h);
  reduce_to_hessenberg(h);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  while (hi >= 0) {
    if (hi == 0) {
      out.push_back(h(0, 0));
      break;
    }
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = abs1(h(lo, lo - 1));
      double diag = abs1(h(lo - 1, lo - 1)) + abs1(h(lo, lo));
      if (diag == 0.0) diag = 1.0;
      if (sub <= eps * diag) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter_per_value) {
      throw Error(ErrorCode::NoConvergence, "Hessenberg QR iteration limit");
    }
    cx mu;
    if (iter % 10 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1),
                           h(hi, hi));
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    std::vector<double> cs(static_cast<std::size_t>(hi - lo));
    CVector sn(static_cast<std::size_t>(hi - lo));
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const cx x = h(k, k);
      const cx y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      double c;
      cx s;
      if (r == 0.0) {
        c = 1.0;
        s = 0.0;
      } else if (std::abs(x) == 0.0) {
        c = 0.0;
        s = std::conj(y) / std::abs(y);
      } else {
        c = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      cs[static_cast<std::size_t>(k - lo)] = c;
      sn[static_cast<std::size_t>(k - lo)] = s;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const cx h1 = h(k, j);
        const cx h2 = h(k + 1, j);
        h(k, j) = c * h1 + s * h2;
        h(k + 1, j) = -std::conj(s) * h1 + c * h2;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const double c = cs[static_cast<std::size_t>(k - lo)];
      const cx s = sn[static_cast<std::size_t>(k - lo)];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= last; ++i) {
        const cx h1 = h(i, k);
        const cx h2 = h(i, k + 1);
        h(i, k) = c * h1 + std::conj(s) * h2;
        h(i, k + 1) = -s * h1 + c * h2;
      }
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return out;
}

}  // namespace logmod
