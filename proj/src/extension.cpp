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

#include "logmod/extension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logmod/error.hpp"
#include "logmod/parallel.hpp"
#include "logmod/random.hpp"
#include "logmod/sdp.hpp"

namespace logmod {
namespace {

constexpr cx kI{0.0, 1.0};

struct VectorLess {
  bool operator()(const CVector& a, const CVector& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](const cx& x, const cx& y) {
          return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
        });
  }
};

// Values of a homogeneous function (f(c h) = |c|^2 f(h)) cached on h
// normalized by its first nonzero entry.
template <class V>
class HomogeneousCache {
 public:
  HomogeneousCache(std::function<V(std::span<const cx>)> f, V zero)
      : f_(std::move(f)), zero_(std::move(zero)) {}

  static std::pair<CVector, double> normalize(CVector h) {
    const auto it = std::find_if(h.begin(), h.end(), [](const cx& z) { return z != cx{}; });
    if (it == h.end()) return {std::move(h), 0.0};
    const cx c = *it;
    for (auto& z : h) z /= c;
    return {std::move(h), std::norm(c)};
  }

  void insert(CVector h, V value) {
    auto [key, scale] = normalize(std::move(h));
    cache_.emplace(std::move(key), (1.0 / scale) * value);
  }

  V operator()(CVector h) {
    auto [key, scale] = normalize(std::move(h));
    if (scale == 0.0) return zero_;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      if (!f_) throw Error(ErrorCode::InvalidArgument, "polarization point missing from grid");
      it = cache_.emplace(key, f_(key)).first;
    }
    return scale * it->second;
  }

 private:
  std::function<V(std::span<const cx>)> f_;
  V zero_;
  std::map<CVector, V, VectorLess> cache_;
};

CVector basis_vector(std::size_t n, std::size_t k) {
  CVector e(n, cx{});
  e[k] = 1.0;
  return e;
}

// B(e_q, e_p) = (1/4) sum_k i^k f(e_q + i^k e_p).
template <class V>
V polarize(HomogeneousCache<V>& f, std::size_t n, std::size_t p, std::size_t q) {
  if (p == q) return f(basis_vector(n, p));
  V acc = 0.0 * f(basis_vector(n, p));
  cx ik{1.0, 0.0};
  for (int k = 0; k < 4; ++k) {
    CVector h = basis_vector(n, q);
    h[p] += ik;
    acc = acc + (0.25 * ik) * f(std::move(h));
    ik *= kI;
  }
  return acc;
}

CVector scaled(std::span<const cx> v, cx c) {
  CVector out(v.begin(), v.end());
  for (auto& z : out) z *= c;
  return out;
}

CVector plus(std::span<const cx> a, std::span<const cx> b, cx c = 1.0) {
  CVector out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * b[i];
  return out;
}

double magnitude(const cx& z) { return std::abs(z); }
double magnitude(const ComplexMatrix& m) { return m.frobenius_norm(); }

// Scaling and parallelogram checks on random pairs. Returns the worst
// violation relative to the size of the values involved.
template <class V>
double quadratic_violation(const std::function<V(std::span<const cx>)>& f, std::size_t dim,
                           std::size_t checks, std::uint64_t seed) {
  Rng rng(seed, 0x51ab);
  double worst = 0.0;
  for (std::size_t s = 0; s < checks; ++s) {
    const CVector h = rng.complex_vector(dim);
    const CVector k = rng.complex_vector(dim);
    const cx lambda = rng.complex_normal();
    const V fh = f(h);
    const V fk = f(k);
    const V flh = f(scaled(h, lambda));
    const V fsum = f(plus(h, k));
    const V fdiff = f(plus(h, k, -1.0));
    const double size = 1.0 + magnitude(fh) * (1.0 + std::norm(lambda)) + magnitude(fk) +
                        magnitude(fsum) + magnitude(fdiff);
    worst = std::max(worst, magnitude(flh - std::norm(lambda) * fh) / size);
    worst = std::max(worst, magnitude(fsum + fdiff - 2.0 * fh - 2.0 * fk) / size);
  }
  return worst;
}

PositiveMapOnMatrices assemble(HomogeneousCache<ComplexMatrix>& gamma, std::size_t d,
                               std::size_t m) {
  PositiveMapOnMatrices phi{m, d, ComplexMatrix(m * d, m * d)};
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      // <Phi(E_ij) e_q, e_p> = tr(B(e_q, e_p) E_ij) = B(e_q, e_p)_{ji}.
      const ComplexMatrix b = polarize(gamma, d, p, q);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) phi.choi(i * d + p, j * d + q) = b(j, i);
    }
  return phi;
}

// The linear maps sigma -> M(sigma), N(sigma) of the domination blocks:
// M[k,l] = tr(sigma E_k^* E_l), N[k,l] = tr(sigma E_k E_l^*).
ComplexMatrix left_gram(const ComplexMatrix& sigma, const std::vector<IndexPair>& pairs) {
  const std::size_t k = pairs.size();
  ComplexMatrix out(k, k);
  // E_a^* E_b = E_{ja,ia} E_{ib,jb} = [ia == ib] E_{ja,jb}; tr(sigma E_{r,c}) = sigma_{c,r}.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (pairs[a].first == pairs[b].first) out(a, b) = sigma(pairs[b].second, pairs[a].second);
  return out;
}

ComplexMatrix right_gram(const ComplexMatrix& sigma, const std::vector<IndexPair>& pairs) {
  const std::size_t k = pairs.size();
  ComplexMatrix out(k, k);
  // E_a E_b^* = [ja == jb] E_{ia,ib}.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (pairs[a].second == pairs[b].second) out(a, b) = sigma(pairs[b].first, pairs[a].first);
  return out;
}

struct FunctionalProblem {
  ComplexMatrix sigma0;
  std::vector<ComplexMatrix> free;  // Hermitian directions
  std::vector<IndexPair> pairs;
  ComplexMatrix gc;  // <rho(E_l)h, rho(E_k)h>
  ComplexMatrix gr;  // <rho(E_l)^*h, rho(E_k)^*h>

  std::vector<ComplexMatrix> blocks(const ComplexMatrix& sigma, bool constant) const {
    ComplexMatrix m = left_gram(sigma, pairs);
    ComplexMatrix n = right_gram(sigma, pairs);
    if (constant) {
      m -= gc;
      n -= gr;
    }
    return {sigma, m, n};
  }

  ComplexMatrix sigma(const std::vector<double>& y) const {
    ComplexMatrix s = sigma0;
    for (std::size_t k = 0; k < free.size(); ++k) s += y[k] * free[k];
    return s;
  }

  // maximize objective . y (+ t when with_t) subject to every block >= (t or -relax) I.
  BlockLmi lmi(const std::vector<double>& objective, bool with_t, double relax) const {
    BlockLmi p;
    p.vars = free.size() + (with_t ? 1 : 0);
    p.objective = objective;
    if (with_t) p.objective.push_back(1.0);
    const auto c = blocks(sigma0, true);
    std::vector<std::vector<ComplexMatrix>> dirs;
    for (const auto& f : free) dirs.push_back(blocks(f, false));
    for (std::size_t b = 0; b < c.size(); ++b) {
      const std::size_t size = c[b].rows();
      LmiBlock blk{c[b] + relax * ComplexMatrix::identity(size), {}};
      for (std::size_t k = 0; k < free.size(); ++k) blk.terms.push_back({k, -1.0 * dirs[k][b]});
      if (with_t) blk.terms.push_back({free.size(), ComplexMatrix::identity(size)});
      p.blocks.push_back(std::move(blk));
    }
    return p;
  }
};

double min_block_eigenvalue(const std::vector<ComplexMatrix>& blocks) {
  double t = INFINITY;
  for (const auto& b : blocks) t = std::min(t, min_eigenvalue(hermitian_part(b)));
  return t;
}

}  // namespace

const ComplexMatrix& PatternRepresentation::image(std::size_t i, std::size_t j) const {
  const auto it = images.find({i, j});
  if (it == images.end()) {
    throw Error(ErrorCode::InvalidArgument,
                "no image for E(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
  return it->second;
}

ComplexMatrix PatternRepresentation::operator()(const ComplexMatrix& a) const {
  const std::size_t n = pattern.size();
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "element size differs from the pattern");
  }
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == cx{}) continue;
      if (!pattern.contains(i, j)) {
        if (std::abs(a(i, j)) > 1e-12) {
          throw Error(ErrorCode::InvalidArgument, "element is not in the pattern algebra");
        }
        continue;
      }
      out += a(i, j) * image(i, j);
    }
  return out;
}

void validate(const PatternRepresentation& rho, double tol) {
  const auto pairs = rho.pattern.pairs();
  if (rho.dim == 0) throw Error(ErrorCode::InvalidArgument, "representation dimension is zero");
  if (rho.images.size() != pairs.size()) {
    throw Error(ErrorCode::InvalidArgument, "images must be given for exactly the pattern pairs");
  }
  for (const auto& [ij, m] : rho.images) {
    if (ij.first >= rho.pattern.size() || ij.second >= rho.pattern.size() ||
        !rho.pattern.contains(ij.first, ij.second)) {
      throw Error(ErrorCode::InvalidArgument, "image given outside the pattern");
    }
    if (m.rows() != rho.dim || m.cols() != rho.dim) {
      throw Error(ErrorCode::DimensionMismatch, "image size differs from dim");
    }
  }
  ComplexMatrix unit = -1.0 * ComplexMatrix::identity(rho.dim);
  for (std::size_t i = 0; i < rho.pattern.size(); ++i) unit += rho.image(i, i);
  if (unit.max_abs() > tol) throw Error(ErrorCode::InvalidArgument, "representation is not unital");
  for (const auto& [a, ma] : rho.images)
    for (const auto& [b, mb] : rho.images) {
      ComplexMatrix diff = ma * mb;
      if (a.second == b.first) diff -= rho.image(a.first, b.second);
      if (diff.max_abs() > tol) {
        throw Error(ErrorCode::InvalidArgument, "representation is not multiplicative");
      }
    }
}

PatternRepresentation identity_representation(const Pattern& p) {
  PatternRepresentation rho{p, p.size(), {}};
  for (const auto& [i, j] : p.pairs()) rho.images[{i, j}] = ComplexMatrix::unit(p.size(), p.size(), i, j);
  return rho;
}

PatternRepresentation corner_representation(const Pattern& p) {
  if (!p.is_transitive()) throw Error(ErrorCode::NotTransitive, "pattern is not transitive");
  const std::size_t n = p.size();
  std::size_t root = n;
  for (std::size_t i = 0; i < n && root == n; ++i) {
    bool minimal = true;
    for (std::size_t k = 0; k < n; ++k)
      if (p.contains(k, i) && !p.contains(i, k)) minimal = false;
    if (minimal) root = i;
  }
  std::vector<std::size_t> cls;
  std::vector<std::size_t> position(n, n);
  for (std::size_t j = 0; j < n; ++j)
    if (p.contains(root, j) && p.contains(j, root)) {
      position[j] = cls.size();
      cls.push_back(j);
    }
  PatternRepresentation rho{p, cls.size(), {}};
  for (const auto& [i, j] : p.pairs()) {
    ComplexMatrix m(cls.size(), cls.size());
    if (position[i] < n && position[j] < n) m(position[i], position[j]) = 1.0;
    rho.images[{i, j}] = m;
  }
  return rho;
}

PatternRepresentation direct_sum(const PatternRepresentation& a, const PatternRepresentation& b) {
  if (!(a.pattern == b.pattern)) {
    throw Error(ErrorCode::InvalidArgument, "direct sum needs a common pattern");
  }
  PatternRepresentation rho{a.pattern, a.dim + b.dim, {}};
  for (const auto& [ij, ma] : a.images) {
    ComplexMatrix m(rho.dim, rho.dim);
    m.set_block(0, 0, ma);
    m.set_block(a.dim, a.dim, b.image(ij.first, ij.second));
    rho.images[ij] = m;
  }
  return rho;
}

ComplexMatrix random_element(const Pattern& p, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  return random_element(p, rng);
}

ComplexMatrix random_element(const Pattern& p, Rng& rng) {
  ComplexMatrix a(p.size(), p.size());
  for (const auto& [i, j] : p.pairs()) a(i, j) = rng.complex_normal();
  return a;
}

double rn_margin(const PatternRepresentation& rho, std::size_t n, std::size_t samples,
                 std::uint64_t seed, Side side) {
  const std::size_t m = rho.pattern.size();
  std::vector<double> margins(samples, INFINITY);
  parallel_for(samples, [&](std::size_t s) {
    const bool row = side == Side::row;
    Rng rng(seed, s);
    ComplexMatrix dom = row ? ComplexMatrix(m, n * m) : ComplexMatrix(n * m, m);
    ComplexMatrix img = row ? ComplexMatrix(rho.dim, n * rho.dim) : ComplexMatrix(n * rho.dim, rho.dim);
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexMatrix a = random_element(rho.pattern, rng);
      const ComplexMatrix ra = rho(a);
      if (row) {
        dom.set_block(0, k * m, a);
        img.set_block(0, k * rho.dim, ra);
      } else {
        dom.set_block(k * m, 0, a);
        img.set_block(k * rho.dim, 0, ra);
      }
    }
    const double dn = operator_norm(dom);
    if (dn > 0.0) margins[s] = 1.0 - operator_norm(img) / dn;
  });
  return samples == 0 ? INFINITY : *std::min_element(margins.begin(), margins.end());
}

ComplexMatrix polarization_reconstruct(const QuadraticFormOracle& phi, std::uint64_t seed) {
  const std::size_t d = phi.dim;
  if (d == 0 || !phi.evaluate) throw Error(ErrorCode::InvalidArgument, "empty quadratic form oracle");
  if (quadratic_violation<cx>(phi.evaluate, d, 100, seed) > 1e-9) {
    throw Error(ErrorCode::NotQuadratic, "scaling or parallelogram identity fails");
  }
  HomogeneousCache<cx> cache(phi.evaluate, cx{});
  ComplexMatrix t(d, d);
  // T_ij = <T e_j, e_i> = B(e_j, e_i).
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t(i, j) = polarize(cache, d, i, j);

  Rng rng(seed, 0x7e57);
  const double size = 1.0 + t.frobenius_norm();
  for (int s = 0; s < 100; ++s) {
    const CVector h = rng.complex_vector(d);
    const cx want = phi.evaluate(h);
    const cx got = inner(t * std::span<const cx>(h), h);
    if (std::abs(want - got) > 1e-9 * size * std::pow(norm(h), 2)) {
      throw Error(ErrorCode::NotQuadratic, "reconstructed operator does not reproduce the form");
    }
  }
  return t;
}

ComplexMatrix PositiveMapOnMatrices::operator()(const ComplexMatrix& b) const {
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (b(i, j) != cx{}) out += b(i, j) * unit_image(i, j);
  return out;
}

double sampled_positivity(const PositiveMapOnMatrices& phi, std::size_t samples,
                          std::uint64_t seed) {
  Rng rng(seed, 0x905);
  double worst = INFINITY;
  for (std::size_t s = 0; s < samples; ++s) {
    const CVector xi = rng.unit_vector(phi.m);
    const CVector eta = rng.unit_vector(phi.d);
    const ComplexMatrix img = phi(outer(xi, xi));
    worst = std::min(worst, inner(img * std::span<const cx>(eta), eta).real());
  }
  return worst;
}

PositiveMapOnMatrices assemble_positive_map(const FunctionalFamily& gamma, std::size_t checks,
                                            std::uint64_t seed) {
  const std::size_t d = gamma.dim;
  const std::size_t m = gamma.size;
  if (d == 0 || m == 0 || !gamma.evaluate) {
    throw Error(ErrorCode::InvalidArgument, "empty functional family");
  }
  if (quadratic_violation<ComplexMatrix>(gamma.evaluate, d, checks, seed) > 1e-9) {
    throw Error(ErrorCode::NotQuadraticFamily, "scaling or parallelogram identity fails");
  }
  HomogeneousCache<ComplexMatrix> cache(gamma.evaluate, ComplexMatrix(m, m));
  auto phi = assemble(cache, d, m);

  Rng rng(seed, 0xa55e);
  const double size = 1.0 + phi.choi.frobenius_norm();
  for (std::size_t s = 0; s < checks; ++s) {
    const CVector h = rng.complex_vector(d);
    const ComplexMatrix b = rng.complex_matrix(m, m);
    const cx want = trace_product(gamma.evaluate(h), b);
    const cx got = inner(phi(b) * std::span<const cx>(h), h);
    if (std::abs(want - got) > 1e-8 * size * b.frobenius_norm() * std::pow(norm(h), 2)) {
      throw Error(ErrorCode::NotQuadraticFamily, "assembled map does not reproduce the family");
    }
  }
  return phi;
}

DominatingFunctional dominating_functional(const PatternRepresentation& rho,
                                           std::span<const cx> h,
                                           const FunctionalOptions& opts) {
  validate(rho);
  if (h.size() != rho.dim) throw Error(ErrorCode::DimensionMismatch, "vector size differs from dim");
  const std::size_t n = rho.pattern.size();
  DominatingFunctional out;
  const double mass = std::pow(norm(h), 2);
  if (mass == 0.0) {
    out.density = ComplexMatrix(n, n);
    return out;
  }
  // phi_h is homogeneous of degree 2; work with the unit vector.
  const CVector u = scaled(h, 1.0 / std::sqrt(mass));

  FunctionalProblem prob;
  prob.pairs = rho.pattern.pairs();
  const std::size_t k = prob.pairs.size();
  std::vector<CVector> rh(k);
  std::vector<CVector> rsh(k);
  prob.sigma0 = ComplexMatrix(n, n);
  for (std::size_t a = 0; a < k; ++a) {
    const auto [i, j] = prob.pairs[a];
    const ComplexMatrix& e = rho.image(i, j);
    rh[a] = e * std::span<const cx>(u);
    rsh[a] = e.adjoint() * std::span<const cx>(u);
    // tr(sigma E_ij) = sigma_ji must equal <rho(E_ij) u, u>.
    prob.sigma0(j, i) = inner(rh[a], u);
  }
  const double consistency = opts.tol;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(prob.sigma0(i, i).imag()) > consistency) {
      throw Error(ErrorCode::Infeasible, "diagonal value is not real");
    }
    prob.sigma0(i, i) = prob.sigma0(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ij = rho.pattern.contains(i, j);
      const bool ji = rho.pattern.contains(j, i);
      if (ij && ji) {
        if (std::abs(prob.sigma0(i, j) - std::conj(prob.sigma0(j, i))) > consistency) {
          throw Error(ErrorCode::Infeasible, "prescribed values are not Hermitian");
        }
        const cx v = 0.5 * (prob.sigma0(i, j) + std::conj(prob.sigma0(j, i)));
        prob.sigma0(i, j) = v;
        prob.sigma0(j, i) = std::conj(v);
      } else if (ij) {
        prob.sigma0(i, j) = std::conj(prob.sigma0(j, i));
      } else if (ji) {
        prob.sigma0(j, i) = std::conj(prob.sigma0(i, j));
      } else {
        ComplexMatrix x(n, n);
        x(i, j) = 1.0;
        x(j, i) = 1.0;
        ComplexMatrix y(n, n);
        y(i, j) = kI;
        y(j, i) = -kI;
        prob.free.push_back(std::move(x));
        prob.free.push_back(std::move(y));
      }
    }
  }
  prob.gc = ComplexMatrix(k, k);
  prob.gr = ComplexMatrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      prob.gc(a, b) = inner(rh[b], rh[a]);
      prob.gr(a, b) = inner(rsh[b], rsh[a]);
    }
  out.free_parameters = prob.free.size();

  ComplexMatrix sigma = prob.sigma0;
  if (prob.free.empty()) {
    out.slack = min_block_eigenvalue(prob.blocks(sigma, true));
  } else {
    const auto sol = solve_block_lmi(prob.lmi(std::vector<double>(prob.free.size(), 0.0), true, 0.0));
    std::vector<double> y(sol.y.begin(), sol.y.begin() + static_cast<long>(prob.free.size()));
    sigma = hermitian_part(prob.sigma(y));
    out.slack = min_block_eigenvalue(prob.blocks(sigma, true));
  }
  if (out.slack < -opts.tol) {
    throw Error(ErrorCode::Infeasible,
                "no positive functional dominates both sides; constraint deficit " +
                    std::to_string(-out.slack));
  }

  if (!prob.free.empty() && opts.uniqueness_objectives > 0) {
    const double relax = std::max(0.0, -out.slack) + 1e-10;
    for (std::size_t r = 0; r < opts.uniqueness_objectives; ++r) {
      Rng rng(opts.seed, 0x0b1 + r);
      const ComplexMatrix w = rng.hermitian(n);
      std::vector<double> objective;
      for (const auto& f : prob.free) objective.push_back(real_inner(w, f));
      const auto sol = solve_block_lmi(prob.lmi(objective, false, relax));
      const ComplexMatrix other = hermitian_part(prob.sigma(sol.y));
      out.uniqueness_spread = std::max(out.uniqueness_spread, (other - sigma).frobenius_norm());
    }
  }
  out.density = mass * sigma;
  out.uniqueness_spread *= mass;
  return out;
}

ExtensionReport positive_extension(const PatternRepresentation& rho, const ExtensionOptions& opts) {
  validate(rho);
  const std::size_t d = rho.dim;
  const std::size_t n = rho.pattern.size();

  std::vector<CVector> grid;
  for (std::size_t p = 0; p < d; ++p) grid.push_back(basis_vector(d, p));
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q)
      for (const cx c : {cx{1.0}, cx{-1.0}, kI, -kI}) {
        CVector h = basis_vector(d, p);
        h[q] = c;
        grid.push_back(std::move(h));
      }
  std::vector<DominatingFunctional> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t g) {
    values[g] = dominating_functional(rho, grid[g], opts.functional);
  });

  ExtensionReport report;
  HomogeneousCache<ComplexMatrix> cache({}, ComplexMatrix(n, n));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    cache.insert(grid[g], values[g].density);
    report.uniqueness_spread = std::max(report.uniqueness_spread, values[g].uniqueness_spread);
  }

  // phi_{h+k} + phi_{h-k} = 2 phi_h + 2 phi_k for h = e_p, k = c e_q.
  std::size_t g = d;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      const ComplexMatrix base = 2.0 * (values[p].density + values[q].density);
      report.parallelogram_residual = std::max(
          {report.parallelogram_residual,
           (values[g].density + values[g + 1].density - base).frobenius_norm(),
           (values[g + 2].density + values[g + 3].density - base).frobenius_norm()});
      g += 4;
    }
  if (report.parallelogram_residual > opts.parallelogram_tol) {
    throw Error(ErrorCode::ParallelogramViolation,
                "functionals violate the parallelogram law by " +
                    std::to_string(report.parallelogram_residual));
  }

  report.map = assemble(cache, d, n);
  for (const auto& [ij, m] : rho.images)
    report.extension_error = std::max(
        report.extension_error, (report.map.unit_image(ij.first, ij.second) - m).max_abs());

  report.schwarz_gap = INFINITY;
  for (std::size_t s = 0; s < opts.schwarz_samples; ++s) {
    ComplexMatrix a = random_element(rho.pattern, opts.functional.seed, 0x5c4a0000 + s);
    a *= 1.0 / operator_norm(a);
    const ComplexMatrix ra = rho(a);
    const ComplexMatrix left = report.map(adjoint_times(a, a)) - adjoint_times(ra, ra);
    const ComplexMatrix right = report.map(a * a.adjoint()) - ra * ra.adjoint();
    report.schwarz_gap = std::min({report.schwarz_gap, min_eigenvalue(hermitian_part(left)),
                                   min_eigenvalue(hermitian_part(right))});
  }
  report.positivity = sampled_positivity(report.map, opts.positivity_samples, opts.functional.seed);
  return report;
}

NaimarkDilation naimark_dilate(const std::vector<ComplexMatrix>& povm) {
  if (povm.empty()) throw Error(ErrorCode::NotPOVM, "empty POVM");
  const std::size_t d = povm.front().rows();
  ComplexMatrix total = -1.0 * ComplexMatrix::identity(d);
  std::vector<HermitianEigen> eigs;
  for (const auto& f : povm) {
    if (f.rows() != d || f.cols() != d) throw Error(ErrorCode::NotPOVM, "effects differ in size");
    if (hermitian_defect(f) > 1e-10) throw Error(ErrorCode::NotPOVM, "effect is not Hermitian");
    eigs.push_back(herm_eig(hermitian_part(f)));
    if (eigs.back().values.front() < -1e-10) {
      throw Error(ErrorCode::NotPOVM, "effect is not positive semidefinite");
    }
    total += f;
  }
  if (total.max_abs() > 1e-9) throw Error(ErrorCode::NotPOVM, "effects do not sum to the identity");

  std::vector<CVector> rows;
  std::vector<std::size_t> owner;
  for (std::size_t x = 0; x < povm.size(); ++x)
    for (std::size_t k = 0; k < d; ++k) {
      const double l = eigs[x].values[k];
      if (l <= 1e-9) continue;
      // Row sqrt(l) u^*, so that V^* E_x V = sum_k l u u^* = F_x.
      CVector r = eigs[x].vectors.col(k);
      for (auto& z : r) z = std::sqrt(l) * std::conj(z);
      rows.push_back(std::move(r));
      owner.push_back(x);
    }
  const std::size_t big = rows.size();
  NaimarkDilation out{ComplexMatrix(big, d), {}};
  for (std::size_t r = 0; r < big; ++r)
    for (std::size_t k = 0; k < d; ++k) out.isometry(r, k) = rows[r][k];
  for (std::size_t x = 0; x < povm.size(); ++x) {
    ComplexMatrix e(big, big);
    for (std::size_t r = 0; r < big; ++r)
      if (owner[r] == x) e(r, r) = 1.0;
    out.projections.push_back(std::move(e));
  }
  return out;
}

}  // namespace logmod
