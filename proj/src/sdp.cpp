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

#include "logmod/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace logmod {
namespace {

double re_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cx x = a(i, j);
      const cx y = b(j, i);
      acc += x.real() * y.real() - x.imag() * y.imag();
    }
  return acc;
}

// Inverse and inverse square root of a Hermitian positive definite matrix.
struct InverseFactors {
  ComplexMatrix inv;
  ComplexMatrix inv_sqrt;
};

std::optional<InverseFactors> inverse_factors(const ComplexMatrix& p) {
  const auto eig = herm_eig(hermitian_part(p));
  const std::size_t n = p.rows();
  if (!(eig.values.front() > 0.0)) return std::nullopt;
  ComplexMatrix inv(n, n);
  ComplexMatrix inv_sqrt(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = eig.values[k];
    const double s = 1.0 / std::sqrt(l);
    for (std::size_t i = 0; i < n; ++i) {
      const cx vi = eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        const cx w = vi * std::conj(eig.vectors(j, k));
        inv(i, j) += w / l;
        inv_sqrt(i, j) += w * s;
      }
    }
  }
  return InverseFactors{std::move(inv), std::move(inv_sqrt)};
}

// Largest alpha with p + alpha d >= 0, given p^{-1/2}.
double max_step(const ComplexMatrix& inv_sqrt, const ComplexMatrix& d) {
  const double l = min_eigenvalue(hermitian_part(inv_sqrt * d * inv_sqrt));
  return l < 0.0 ? -1.0 / l : INFINITY;
}

// Cholesky of a dense real symmetric positive definite matrix, with a
// diagonal shift retried on breakdown.
class SpdSolver {
 public:
  explicit SpdSolver(std::vector<double> m, std::size_t n) : n_(n), l_(std::move(m)) {
    double scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i) scale = std::max(scale, std::abs(l_[i * n_ + i]));
    const std::vector<double> original = l_;
    double shift = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      l_ = original;
      for (std::size_t i = 0; i < n_; ++i) l_[i * n_ + i] += shift;
      if (factor()) {
        ok_ = true;
        return;
      }
      shift = shift == 0.0 ? 1e-14 * std::max(scale, 1e-300) : shift * 100.0;
    }
  }

  bool ok() const { return ok_; }

  std::vector<double> solve(std::vector<double> b) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double s = b[i];
      for (std::size_t k = 0; k < i; ++k) s -= l_[i * n_ + k] * b[k];
      b[i] = s / l_[i * n_ + i];
    }
    for (std::size_t i = n_; i-- > 0;) {
      double s = b[i];
      for (std::size_t k = i + 1; k < n_; ++k) s -= l_[k * n_ + i] * b[k];
      b[i] = s / l_[i * n_ + i];
    }
    return b;
  }

 private:
  bool factor() {
    for (std::size_t j = 0; j < n_; ++j) {
      double d = l_[j * n_ + j];
      for (std::size_t k = 0; k < j; ++k) d -= l_[j * n_ + k] * l_[j * n_ + k];
      if (!(d > 0.0)) return false;
      d = std::sqrt(d);
      l_[j * n_ + j] = d;
      for (std::size_t i = j + 1; i < n_; ++i) {
        double s = l_[i * n_ + j];
        for (std::size_t k = 0; k < j; ++k) s -= l_[i * n_ + k] * l_[j * n_ + k];
        l_[i * n_ + j] = s / d;
      }
    }
    return true;
  }

  std::size_t n_;
  std::vector<double> l_;
  bool ok_ = false;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

class Ipm {
 public:
  Ipm(const BlockLmi& p, const SdpOptions& opts) : p_(p), opts_(opts) {}

  BlockLmiSolution run() {
    initialize();
    std::optional<BlockLmiSolution> best;
    double best_merit = INFINITY;
    int since_best = 0;
    for (int iter = 0; iter < opts_.max_iter; ++iter) {
      const double merit = measure();
      if (merit < best_merit) {
        if (merit < 0.5 * best_merit) since_best = 0;
        best_merit = merit;
        best = snapshot(iter);
      } else {
        ++since_best;
      }
      if (merit <= opts_.tol) return *best;
      if (since_best >= 8 && best_merit <= opts_.accept) return *best;
      if (!step()) break;
    }
    const double merit = measure();
    if (merit < best_merit) {
      best_merit = merit;
      best = snapshot(opts_.max_iter);
    }
    if (best && best_merit <= opts_.accept) return *best;
    throw Error(ErrorCode::NoConvergence,
                "interior point method stopped with residual " + std::to_string(best_merit));
  }

 private:
  void initialize() {
    const std::size_t nb = p_.blocks.size();
    x_.resize(nb);
    s_.resize(nb);
    y_.assign(p_.vars, 0.0);
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& blk = p_.blocks[j];
      const double n = static_cast<double>(blk.constant.rows());
      double amax = 0.0;
      double xi = std::max(10.0, std::sqrt(n));
      for (const auto& t : blk.terms) {
        const double an = t.coeff.frobenius_norm();
        amax = std::max(amax, an);
        xi = std::max(xi, n * (1.0 + std::abs(p_.objective[t.var])) / (1.0 + an));
      }
      const double eta = std::max(
          {10.0, std::sqrt(n), (1.0 + std::max(amax, blk.constant.frobenius_norm())) / std::sqrt(n)});
      x_[j] = xi * ComplexMatrix::identity(blk.constant.rows());
      s_[j] = eta * ComplexMatrix::identity(blk.constant.rows());
    }
    double c2 = 0.0;
    for (const auto& blk : p_.blocks) c2 += std::pow(blk.constant.frobenius_norm(), 2);
    c_norm_ = std::sqrt(c2);
    b_norm_ = norm2(p_.objective);
  }

  std::vector<double> apply_a(const std::vector<ComplexMatrix>& y) const {
    std::vector<double> out(p_.vars, 0.0);
    for (std::size_t j = 0; j < p_.blocks.size(); ++j)
      for (const auto& t : p_.blocks[j].terms) out[t.var] += re_trace_product(t.coeff, y[j]);
    return out;
  }

  ComplexMatrix apply_at(std::size_t j, const std::vector<double>& y) const {
    const auto& blk = p_.blocks[j];
    ComplexMatrix out(blk.constant.rows(), blk.constant.cols());
    for (const auto& t : blk.terms) out += y[t.var] * t.coeff;
    return out;
  }

  // Residuals and objectives at the current iterate; returns the merit.
  double measure() {
    const std::size_t nb = p_.blocks.size();
    rp_ = p_.objective;
    const auto ax = apply_a(x_);
    for (std::size_t k = 0; k < p_.vars; ++k) rp_[k] -= ax[k];
    rd_.resize(nb);
    double rd2 = 0.0;
    double xs = 0.0;
    double total = 0.0;
    dobj_ = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      rd_[j] = p_.blocks[j].constant - s_[j] - apply_at(j, y_);
      rd2 += std::pow(rd_[j].frobenius_norm(), 2);
      xs += real_inner(x_[j], s_[j]);
      total += static_cast<double>(x_[j].rows());
      dobj_ += real_inner(p_.blocks[j].constant, x_[j]);
    }
    pobj_ = dot(p_.objective, y_);
    mu_ = xs / total;
    pinf_ = norm2(rp_) / (1.0 + b_norm_);
    dinf_ = std::sqrt(rd2) / (1.0 + c_norm_);
    const double denom = 1.0 + std::abs(pobj_) + std::abs(dobj_);
    gap_ = std::max(std::abs(pobj_ - dobj_), std::abs(xs)) / denom;
    const double merit = std::max({pinf_, dinf_, gap_});
    return std::isfinite(merit) ? merit : INFINITY;
  }

  BlockLmiSolution snapshot(int iter) const {
    BlockLmiSolution sol;
    sol.y = y_;
    sol.dual = x_;
    sol.slack.resize(p_.blocks.size());
    for (std::size_t j = 0; j < p_.blocks.size(); ++j)
      sol.slack[j] = p_.blocks[j].constant - apply_at(j, y_);
    sol.primal_objective = pobj_;
    sol.dual_objective = dobj_;
    sol.primal_infeasibility = pinf_;
    sol.dual_infeasibility = dinf_;
    sol.iterations = iter;
    return sol;
  }

  struct Direction {
    std::vector<double> dy;
    std::vector<ComplexMatrix> dx;
    std::vector<ComplexMatrix> ds;
  };

  // Solves for the direction given K_j, where dX = K - X dS S^{-1}.
  Direction direction(const SpdSolver& schur, const std::vector<ComplexMatrix>& k,
                      const std::vector<InverseFactors>& sf) const {
    const std::size_t nb = p_.blocks.size();
    std::vector<ComplexMatrix> xrs(nb);
    for (std::size_t j = 0; j < nb; ++j) xrs[j] = x_[j] * rd_[j] * sf[j].inv - k[j];
    auto rhs = apply_a(xrs);
    for (std::size_t i = 0; i < p_.vars; ++i) rhs[i] += rp_[i];
    Direction d;
    d.dy = schur.solve(std::move(rhs));
    d.ds.resize(nb);
    d.dx.resize(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      d.ds[j] = hermitian_part(rd_[j] - apply_at(j, d.dy));
      d.dx[j] = hermitian_part(k[j] - x_[j] * d.ds[j] * sf[j].inv);
    }
    return d;
  }

  std::pair<double, double> step_lengths(const Direction& d,
                                         const std::vector<InverseFactors>& xf,
                                         const std::vector<InverseFactors>& sf) const {
    double ap = INFINITY;
    double ad = INFINITY;
    for (std::size_t j = 0; j < p_.blocks.size(); ++j) {
      ap = std::min(ap, max_step(xf[j].inv_sqrt, d.dx[j]));
      ad = std::min(ad, max_step(sf[j].inv_sqrt, d.ds[j]));
    }
    return {ap, ad};
  }

  bool step() {
    const std::size_t nb = p_.blocks.size();
    const std::size_t m = p_.vars;
    std::vector<InverseFactors> xf;
    std::vector<InverseFactors> sf;
    xf.reserve(nb);
    sf.reserve(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      auto fx = inverse_factors(x_[j]);
      auto fs = inverse_factors(s_[j]);
      if (!fx || !fs) return false;
      xf.push_back(std::move(*fx));
      sf.push_back(std::move(*fs));
    }

    std::vector<double> schur(m * m, 0.0);
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& terms = p_.blocks[j].terms;
      std::vector<ComplexMatrix> pl(terms.size());
      for (std::size_t l = 0; l < terms.size(); ++l) pl[l] = x_[j] * terms[l].coeff * sf[j].inv;
      for (std::size_t a = 0; a < terms.size(); ++a)
        for (std::size_t l = 0; l < terms.size(); ++l)
          schur[terms[a].var * m + terms[l].var] += re_trace_product(terms[a].coeff, pl[l]);
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const double v = 0.5 * (schur[a * m + b] + schur[b * m + a]);
        schur[a * m + b] = schur[b * m + a] = v;
      }
    const SpdSolver solver(std::move(schur), m);
    if (!solver.ok()) return false;

    std::vector<ComplexMatrix> k(nb);
    for (std::size_t j = 0; j < nb; ++j) k[j] = -1.0 * x_[j];
    const Direction pred = direction(solver, k, sf);
    auto [ap, ad] = step_lengths(pred, xf, sf);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    double xs_pred = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      xs_pred += real_inner(x_[j] + ap * pred.dx[j], s_[j] + ad * pred.ds[j]);
      total += static_cast<double>(x_[j].rows());
    }
    const double ratio = std::clamp(xs_pred / (mu_ * total), 0.0, 1.0);
    const double sigma = std::pow(ratio, 3);

    for (std::size_t j = 0; j < nb; ++j) {
      k[j] = (sigma * mu_) * sf[j].inv - x_[j] - pred.dx[j] * pred.ds[j] * sf[j].inv;
    }
    const Direction corr = direction(solver, k, sf);
    auto [cp, cd] = step_lengths(corr, xf, sf);
    const double gamma = 0.9 + 0.09 * std::min(ap, ad);
    cp = std::min(1.0, gamma * cp);
    cd = std::min(1.0, gamma * cd);
    if (!(cp > 1e-12) && !(cd > 1e-12)) return false;

    for (std::size_t j = 0; j < nb; ++j) {
      x_[j] = hermitian_part(x_[j] + cp * corr.dx[j]);
      s_[j] = hermitian_part(s_[j] + cd * corr.ds[j]);
    }
    for (std::size_t i = 0; i < m; ++i) y_[i] += cd * corr.dy[i];
    return true;
  }

  const BlockLmi& p_;
  SdpOptions opts_;
  std::vector<ComplexMatrix> x_;
  std::vector<ComplexMatrix> s_;
  std::vector<double> y_;
  std::vector<double> rp_;
  std::vector<ComplexMatrix> rd_;
  double c_norm_ = 0.0;
  double b_norm_ = 0.0;
  double pobj_ = 0.0;
  double dobj_ = 0.0;
  double mu_ = 0.0;
  double pinf_ = 0.0;
  double dinf_ = 0.0;
  double gap_ = 0.0;
};

void validate(const BlockLmi& p) {
  if (p.objective.size() != p.vars) {
    throw Error(ErrorCode::DimensionMismatch, "objective length differs from variable count");
  }
  for (const auto& blk : p.blocks) {
    const std::size_t n = blk.constant.rows();
    if (n == 0 || !blk.constant.is_square()) {
      throw Error(ErrorCode::DimensionMismatch, "LMI block constant must be square and nonempty");
    }
    for (const auto& t : blk.terms) {
      if (t.var >= p.vars || t.coeff.rows() != n || t.coeff.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "LMI term does not match its block");
      }
    }
  }
}

}  // namespace

BlockLmiSolution solve_block_lmi(const BlockLmi& problem, const SdpOptions& opts) {
  validate(problem);
  if (problem.blocks.empty()) {
    throw Error(ErrorCode::InvalidArgument, "LMI without blocks");
  }
  return Ipm(problem, opts).run();
}

LmiSolution solve_lmi(const LMIProblem& problem, double tol) {
  const ComplexMatrix& g = problem.target;
  const std::size_t d = g.rows();
  const std::size_t count = problem.generators.size();
  if (d == 0 || !g.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "target must be square and nonempty");
  }
  if (d > 64 || count > 4096) {
    throw Error(ErrorCode::TooLarge, "solve_lmi handles d <= 64 and at most 4096 generators");
  }
  if (count == 0) {
    throw Error(ErrorCode::InvalidArgument, "no generators");
  }
  std::vector<double> costs = problem.costs;
  if (costs.empty()) costs.assign(count, 1.0);
  if (costs.size() != count) {
    throw Error(ErrorCode::DimensionMismatch, "one cost per generator expected");
  }
  for (double c : costs)
    if (!(c >= 0.0)) throw Error(ErrorCode::InvalidArgument, "costs must be nonnegative");
  if (!is_hermitian(g, 1e-10)) throw Error(ErrorCode::NotHermitian, "target is not Hermitian");
  ComplexMatrix total(d, d);
  for (const auto& v : problem.generators) {
    if (v.rows() != d || v.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "generator size differs from target");
    }
    if (!is_hermitian(v, 1e-10)) throw Error(ErrorCode::NotHermitian, "generator is not Hermitian");
    total += v;
  }

  // Directions killed by every generator: G must vanish there or be
  // strictly negative on what is left.
  const double g_scale = std::max(1.0, g.max_abs());
  const auto teig = herm_eig(total);
  const double null_cut = 1e-10 * std::max(1.0, teig.values.back());
  std::vector<CVector> kernel;
  std::vector<CVector> range;
  for (std::size_t k = 0; k < d; ++k)
    (teig.values[k] <= null_cut ? kernel : range).push_back(teig.vectors.col(k));
  if (!kernel.empty()) {
    ComplexMatrix q0(d, kernel.size());
    for (std::size_t k = 0; k < kernel.size(); ++k) q0.set_col(k, kernel[k]);
    const auto geig = herm_eig(hermitian_part(adjoint_times(q0, g * q0)));
    if (geig.values.back() > tol * g_scale) {
      throw LmiInfeasible("target is positive on a direction no generator sees",
                          q0 * std::span<const cx>(geig.vectors.col(geig.values.size() - 1)));
    }
    for (std::size_t k = 0; k < geig.values.size(); ++k) {
      if (geig.values[k] < -tol * g_scale) {
        range.push_back(q0 * std::span<const cx>(geig.vectors.col(k)));
        continue;
      }
      CVector v = q0 * std::span<const cx>(geig.vectors.col(k));
      if (norm(g * std::span<const cx>(v)) > tol * g_scale) {
        throw LmiInfeasible("target couples a direction no generator sees", v);
      }
    }
  }

  const std::size_t r = range.size();
  LmiSolution out;
  out.weights.assign(count, 0.0);
  out.dual = ComplexMatrix(d, d);
  // nu = 0 is optimal whenever G <= 0.
  const double g_top = max_eigenvalue(hermitian_part(g));
  if (r == 0 || g_top <= 0.0) {
    out.slack = -g_top;
    return out;
  }
  ComplexMatrix q(d, r);
  for (std::size_t k = 0; k < r; ++k) q.set_col(k, range[k]);
  const ComplexMatrix gr = hermitian_part(adjoint_times(q, g * q));

  // Rescale so every generator and the target have unit size. Generators
  // vanishing on the range keep weight zero and stay out of the problem.
  const double gs = gr.frobenius_norm();
  std::vector<std::size_t> active;
  std::vector<double> vs;
  LmiBlock psd{(-1.0 / gs) * gr, {}};
  BlockLmi lmi;
  for (std::size_t i = 0; i < count; ++i) {
    ComplexMatrix vr = hermitian_part(adjoint_times(q, problem.generators[i] * q));
    const double size = vr.frobenius_norm();
    if (size == 0.0) continue;
    const std::size_t var = active.size();
    active.push_back(i);
    vs.push_back(size);
    lmi.objective.push_back(-costs[i] / size);
    psd.terms.push_back({var, (-1.0 / size) * vr});
    lmi.blocks.push_back({ComplexMatrix(1, 1), {{var, ComplexMatrix{{-1.0}}}}});
  }
  lmi.vars = active.size();
  lmi.blocks.insert(lmi.blocks.begin(), std::move(psd));
  const auto sol = solve_block_lmi(lmi);

  double objective = 0.0;
  for (std::size_t k = 0; k < active.size(); ++k) {
    // Scaled variable y_k = nu_i vs_k / gs.
    const std::size_t i = active[k];
    out.weights[i] = std::max(0.0, sol.y[k] * gs / vs[k]);
    objective += costs[i] * out.weights[i];
  }
  // Z for the scaled problem satisfies <V_i / vs_i, Z> + w_i = c_i / vs_i.
  out.dual = q * sol.dual[0] * q.adjoint();
  out.dual = hermitian_part(out.dual);
  out.objective = objective;
  out.gap = std::abs(objective - real_inner(g, out.dual));
  ComplexMatrix dominated = -1.0 * g;
  for (std::size_t i = 0; i < count; ++i) dominated += out.weights[i] * problem.generators[i];
  out.slack = min_eigenvalue(hermitian_part(dominated));
  if (out.slack < -tol * g_scale) {
    throw Error(ErrorCode::NoConvergence,
                "solution violates domination by " + std::to_string(-out.slack));
  }
  return out;
}

}  // namespace logmod
