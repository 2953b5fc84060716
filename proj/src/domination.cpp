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

#include "logmod/domination.hpp"

#include <algorithm>
#include <cmath>

#include "logmod/error.hpp"
#include "logmod/parallel.hpp"
#include "logmod/random.hpp"

namespace logmod {
namespace {

ComplexMatrix combine(const MatrixBasis& b, std::span<const cx> alpha) {
  ComplexMatrix x(b.size, b.size);
  for (std::size_t i = 0; i < alpha.size(); ++i) x += alpha[i] * b.elements[i];
  return x;
}

CVector combine(const FunctionBasis& b, std::span<const cx> alpha) {
  CVector f(b.points, cx{});
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t x = 0; x < b.points; ++x) f[x] += alpha[i] * b.elements[i][x];
  return f;
}

// Real basis of the Hermitian m x m matrices: E_ii, E_ij + E_ji and
// i E_ij - i E_ji for i < j.
std::vector<ComplexMatrix> hermitian_basis(std::size_t m) {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(ComplexMatrix::unit(m, m, i, i));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      ComplexMatrix x(m, m);
      x(i, j) = 1.0;
      x(j, i) = 1.0;
      out.push_back(x);
      ComplexMatrix y(m, m);
      y(i, j) = cx{0.0, 1.0};
      y(j, i) = cx{0.0, -1.0};
      out.push_back(y);
    }
  return out;
}

// Norm of the rows x cols matrix over the domain whose (r, c) entry has
// coefficients cells[r * stride + c].
double domain_norm(const SubspaceMap& psi, const std::vector<CVector>& cells,
                   std::size_t stride, std::size_t rows, std::size_t cols) {
  if (const auto* fb = std::get_if<FunctionBasis>(&psi.domain)) {
    std::vector<CVector> values(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) values[r * cols + c] = combine(*fb, cells[r * stride + c]);
    double best = 0.0;
    ComplexMatrix at(rows, cols);
    for (std::size_t x = 0; x < fb->points; ++x) {
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) at(r, c) = values[r * cols + c][x];
      best = std::max(best, operator_norm(at));
    }
    return best;
  }
  const auto& mb = std::get<MatrixBasis>(psi.domain);
  const std::size_t s = mb.size;
  ComplexMatrix big(rows * s, cols * s);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) big.set_block(r * s, c * s, combine(mb, cells[r * stride + c]));
  return operator_norm(big);
}

double image_norm(const SubspaceMap& psi, Side side, const std::vector<CVector>& cells,
                  std::size_t stride, std::size_t rows, std::size_t cols) {
  VectorGrid grid{rows, cols, std::vector<CVector>(rows * cols)};
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) grid.at(r, c) = logmod::apply(psi, cells[r * stride + c]);
  return side == Side::row ? row_block_norm(grid) : col_block_norm(grid);
}

}  // namespace

void validate(const SubspaceMap& psi) {
  const std::size_t d = psi.dim();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "subspace map needs at least one basis element");
  const std::size_t h = psi.image_dim();
  if (h == 0) throw Error(ErrorCode::InvalidArgument, "image space must be nonzero");
  for (const auto& y : psi.images)
    if (y.size() != h) throw Error(ErrorCode::DimensionMismatch, "images differ in length");
  ComplexMatrix gram(d, d);
  if (const auto* fb = std::get_if<FunctionBasis>(&psi.domain)) {
    if (fb->elements.size() != d || fb->points == 0) {
      throw Error(ErrorCode::DimensionMismatch, "one basis function per image expected");
    }
    for (const auto& f : fb->elements)
      if (f.size() != fb->points) throw Error(ErrorCode::DimensionMismatch, "basis function length");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) gram(i, j) = inner(fb->elements[j], fb->elements[i]);
  } else {
    const auto& mb = std::get<MatrixBasis>(psi.domain);
    if (mb.elements.size() != d || mb.size == 0) {
      throw Error(ErrorCode::DimensionMismatch, "one basis matrix per image expected");
    }
    for (const auto& b : mb.elements)
      if (b.rows() != mb.size || b.cols() != mb.size) {
        throw Error(ErrorCode::DimensionMismatch, "basis matrix size");
      }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        gram(i, j) = trace_product(mb.elements[j], mb.elements[i].adjoint());
  }
  if (min_eigenvalue(hermitian_part(gram)) < 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "basis is not linearly independent");
  }
}

ComplexMatrix image_gram(const SubspaceMap& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = inner(psi.images[j], psi.images[i]);
  return g;
}

CVector apply(const SubspaceMap& psi, std::span<const cx> alpha) {
  CVector out(psi.image_dim(), cx{});
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += alpha[i] * psi.images[i][k];
  return out;
}

DominationCertificate two_summing_norm(const SubspaceMap& psi, double tol) {
  validate(psi);
  const auto* fb = std::get_if<FunctionBasis>(&psi.domain);
  if (fb == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "two_summing_norm needs a function domain");
  }
  const std::size_t d = psi.dim();
  LMIProblem prob;
  prob.target = image_gram(psi);
  for (std::size_t x = 0; x < fb->points; ++x) {
    CVector w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = std::conj(fb->elements[i][x]);
    prob.generators.push_back(outer(w, w));
  }
  const auto sol = solve_lmi(prob, tol);

  DominationCertificate cert;
  cert.value = std::sqrt(std::max(0.0, sol.objective));
  double mass = 0.0;
  for (double v : sol.weights) mass += v;
  cert.measure.assign(fb->points, 1.0 / static_cast<double>(fb->points));
  if (mass > 0.0)
    for (std::size_t x = 0; x < fb->points; ++x) cert.measure[x] = sol.weights[x] / mass;
  cert.dual = sol.dual;
  cert.gap = sol.gap;
  return cert;
}

double domination_slack(const SubspaceMap& psi, const DominationCertificate& cert,
                        std::span<const cx> alpha) {
  const double image = std::pow(norm(logmod::apply(psi, alpha)), 2);
  double mass = 0.0;
  if (const auto* fb = std::get_if<FunctionBasis>(&psi.domain)) {
    const CVector f = combine(*fb, alpha);
    for (std::size_t x = 0; x < fb->points; ++x) mass += cert.measure[x] * std::norm(f[x]);
  } else {
    const ComplexMatrix x = combine(std::get<MatrixBasis>(psi.domain), alpha);
    mass = real_inner(cert.density, x * x.adjoint());
  }
  return cert.value * cert.value * mass - image;
}

std::vector<CVector> witness_family(const DominationCertificate& cert) {
  const auto eig = herm_eig(hermitian_part(cert.dual));
  std::vector<CVector> family;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    if (eig.values[k] <= 0.0) break;
    CVector a = eig.vectors.col(k);
    for (auto& v : a) v *= std::sqrt(eig.values[k]);
    family.push_back(std::move(a));
  }
  return family;
}

double row_ratio(const SubspaceMap& psi, const std::vector<CVector>& family) {
  if (family.empty()) return 0.0;
  const double dn = domain_norm(psi, family, family.size(), 1, family.size());
  if (dn == 0.0) return 0.0;
  return image_norm(psi, Side::row, family, family.size(), 1, family.size()) / dn;
}

ComplexMatrix state_gram(const SubspaceMap& psi, const ComplexMatrix& density, Side side) {
  const auto& mb = std::get<MatrixBasis>(psi.domain);
  const std::size_t d = psi.dim();
  ComplexMatrix l(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexMatrix prod = side == Side::row
                                     ? mb.elements[j] * mb.elements[i].adjoint()
                                     : adjoint_times(mb.elements[i], mb.elements[j]);
      l(i, j) = trace_product(density, prod);
    }
  return l;
}

DominationCertificate dominating_state(const SubspaceMap& psi, Side side,
                                       const StateOptions& opts) {
  validate(psi);
  const auto* mb = std::get_if<MatrixBasis>(&psi.domain);
  if (mb == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "dominating_state needs a matrix domain");
  }
  const std::size_t m = mb->size;
  const std::size_t d = psi.dim();
  const ComplexMatrix g = image_gram(psi);
  const double gs = g.frobenius_norm();

  DominationCertificate cert;
  if (gs == 0.0) {
    cert.density = (1.0 / static_cast<double>(m)) * ComplexMatrix::identity(m);
    cert.dual = ComplexMatrix(d, d);
    return cert;
  }

  const auto herm = hermitian_basis(m);
  BlockLmi lmi;
  lmi.vars = herm.size();
  lmi.objective.resize(herm.size());
  LmiBlock positivity{ComplexMatrix(m, m), {}};
  LmiBlock domination{(-1.0 / gs) * g, {}};
  for (std::size_t k = 0; k < herm.size(); ++k) {
    lmi.objective[k] = -herm[k].trace().real();
    positivity.terms.push_back({k, -1.0 * herm[k]});
    domination.terms.push_back({k, -1.0 * state_gram(psi, herm[k], side)});
  }
  lmi.blocks = {std::move(positivity), std::move(domination)};
  const auto sol = solve_block_lmi(lmi);

  ComplexMatrix r(m, m);
  for (std::size_t k = 0; k < herm.size(); ++k) r += (sol.y[k] * gs) * herm[k];
  r = hermitian_part(r);
  const double mass = r.trace().real();
  cert.value = std::sqrt(std::max(0.0, mass));
  cert.density = mass > 0.0 ? (1.0 / mass) * r
                            : (1.0 / static_cast<double>(m)) * ComplexMatrix::identity(m);
  cert.dual = hermitian_part(sol.dual[1]);
  cert.gap = std::abs(mass - real_inner(g, cert.dual));

  const double slack = min_eigenvalue(hermitian_part(state_gram(psi, r, side) - g));
  if (slack < -opts.tol * std::max(1.0, gs)) {
    throw Error(ErrorCode::NoConvergence,
                "state violates domination by " + std::to_string(-slack));
  }
  if (opts.require_contractive && cert.value > 1.0 + 1e-6) {
    throw Error(ErrorCode::Infeasible, "no state dominates psi; the smallest functional has mass " +
                                           std::to_string(mass));
  }
  return cert;
}

double cb_level_norm(const SubspaceMap& psi, Side side, std::size_t rows, std::size_t cols,
                     std::size_t samples, std::uint64_t seed) {
  validate(psi);
  if (rows == 0 || cols == 0 || rows >= 65536 || cols >= 65536) {
    throw Error(ErrorCode::InvalidArgument, "level must be between 1 and 65535");
  }
  const std::size_t d = psi.dim();
  std::vector<double> best(samples, 0.0);
  parallel_for(samples, [&](std::size_t s) {
    // Each cell has its own stream so that smaller levels see the same
    // entries in their leading block.
    std::vector<CVector> cells(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Rng rng(seed, (static_cast<std::uint64_t>(s) << 32) | (r << 16) | c);
        cells[r * cols + c] = rng.complex_vector(d);
      }
    double top = 0.0;
    for (std::size_t r = 1; r <= rows; ++r)
      for (std::size_t c = 1; c <= cols; ++c) {
        const double dn = domain_norm(psi, cells, cols, r, c);
        if (dn > 0.0) top = std::max(top, image_norm(psi, side, cells, cols, r, c) / dn);
      }
    best[s] = top;
  });
  return samples == 0 ? 0.0 : *std::max_element(best.begin(), best.end());
}

}  // namespace logmod
