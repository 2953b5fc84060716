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

#include "logmod/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "logmod/domination.hpp"
#include "logmod/error.hpp"
#include "logmod/extension.hpp"
#include "logmod/outer_fejer.hpp"
#include "logmod/parallel.hpp"
#include "logmod/pattern.hpp"
#include "logmod/random.hpp"
#include "logmod/structured_factor.hpp"

namespace logmod {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "first failure: " << what << "; ";
    passed = passed && ok;
  }
};

SubspaceMap random_function_map(Rng& rng) {
  const std::size_t d = 1 + rng.index(6);
  const std::size_t points = d + rng.index(21 - d);
  const std::size_t h = 1 + rng.index(4);
  FunctionBasis fb{points, {}};
  for (std::size_t i = 0; i < d; ++i) fb.elements.push_back(rng.complex_vector(points));
  SubspaceMap psi{fb, {}};
  for (std::size_t i = 0; i < d; ++i) psi.images.push_back(rng.complex_vector(h));
  return psi;
}

std::vector<SubspaceMap> pietsch_instances(std::uint64_t seed) {
  std::vector<SubspaceMap> out;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(seed, 2000 + t);
    out.push_back(random_function_map(rng));
  }
  return out;
}

std::vector<std::vector<std::size_t>> compositions(std::size_t n) {
  if (n == 0) return {{}};
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t first = 1; first <= n; ++first)
    for (auto rest : compositions(n - first)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  return out;
}

struct NamedRep {
  std::string name;
  PatternRepresentation rho;
};

// Identity, corner and their direct sum for every block upper triangular
// pattern of size at most 5.
std::vector<NamedRep> builtin_representations() {
  std::vector<NamedRep> out;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& sizes : compositions(n)) {
      std::string label = "blocks";
      for (auto s : sizes) label += " " + std::to_string(s);
      const auto p = Pattern::block_upper_triangular(sizes);
      auto id = identity_representation(p);
      auto corner = corner_representation(p);
      auto sum = direct_sum(id, corner);
      out.push_back({"identity " + label, std::move(id)});
      out.push_back({"corner " + label, std::move(corner)});
      out.push_back({"sum " + label, std::move(sum)});
    }
  return out;
}

std::vector<ComplexMatrix> random_povm(Rng& rng, std::size_t d, std::size_t outcomes) {
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total(d, d);
  for (std::size_t x = 0; x < outcomes; ++x) {
    const auto b = rng.complex_matrix(d, 1 + rng.index(d));
    parts.push_back(b * b.adjoint());
    total += parts.back();
  }
  parts.back() += 0.05 * ComplexMatrix::identity(d);
  total += 0.05 * ComplexMatrix::identity(d);
  const auto eig = herm_eig(total);
  ComplexMatrix root_inv(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const auto v = eig.vectors.col(k);
    root_inv += (1.0 / std::sqrt(eig.values[k])) * outer(v, v);
  }
  for (auto& p : parts) p = hermitian_part(root_inv * p * root_inv);
  ComplexMatrix defect = ComplexMatrix::identity(d);
  for (const auto& p : parts) defect -= p;
  parts.back() += defect;
  return parts;
}

AnalyticPoly poly_from_roots(const CVector& roots, cx lead) {
  CVector q{lead};
  for (const cx& r : roots) {
    CVector next(q.size() + 1, cx{});
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i + 1] += q[i];
      next[i] -= r * q[i];
    }
    q = std::move(next);
  }
  return AnalyticPoly{std::move(q)};
}

double min_root_modulus(const AnalyticPoly& q) {
  const std::size_t m = q.coeffs.size() - 1;
  if (m == 0) return INFINITY;
  ComplexMatrix c(m, m);
  for (std::size_t k = 0; k < m; ++k) c(0, k) = -q.coeffs[m - 1 - k] / q.coeffs[m];
  for (std::size_t k = 1; k < m; ++k) c(k, k - 1) = 1.0;
  double best = INFINITY;
  for (const cx& z : eigenvalues(c)) best = std::min(best, std::abs(z));
  return best;
}

void criterion_logmodular(Outcome& out, std::uint64_t seed) {
  const std::size_t expected[] = {1, 4, 29, 355};
  std::size_t yes = 0;
  std::size_t no = 0;
  double worst_residual = 0.0;
  double least_bound = INFINITY;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto patterns = enumerate_patterns(n);
    out.require(patterns.size() == expected[n - 1], "pattern count for n=" + std::to_string(n));
    std::vector<double> residual(patterns.size(), 0.0);
    std::vector<double> bound(patterns.size(), INFINITY);
    std::vector<bool> logmodular(patterns.size(), false);
    parallel_for(patterns.size(), [&](std::size_t k) {
      const auto verdict = decide_logmodular(patterns[k]);
      logmodular[k] = verdict.logmodular;
      if (verdict.logmodular) {
        for (std::uint64_t t = 0; t < 100; ++t) {
          Rng rng(seed, (n << 40) | (k << 16) | t);
          const auto p = rng.positive_definite(n, 0.1);
          const auto a = structured_cholesky(p, *verdict.certificate);
          double r = factor_residual(a, p);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (!patterns[k].contains(i, j) && a(i, j) != cx{}) r = INFINITY;
          residual[k] = std::max(residual[k], r);
        }
      } else {
        bound[k] = refute_logmodular(patterns[k], *verdict.witness, seed).residual_bound;
      }
    });
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      (logmodular[k] ? yes : no)++;
      worst_residual = std::max(worst_residual, residual[k]);
      least_bound = std::min(least_bound, bound[k]);
    }
  }
  out.require(worst_residual <= 1e-8, "structured Cholesky residual " + num(worst_residual));
  out.require(least_bound >= 0.1, "refutation bound " + num(least_bound));
  out.detail << yes << " logmodular, " << no << " not; max residual " << num(worst_residual)
             << ", min refutation bound " << num(least_bound);
}

void criterion_pietsch(Outcome& out, std::uint64_t seed) {
  const auto instances = pietsch_instances(seed);
  double worst_gap = 0.0;
  double worst_slack = INFINITY;
  double worst_mass = 0.0;
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const auto& psi = instances[t];
    const auto c = two_summing_norm(psi);
    worst_gap = std::max(worst_gap, c.gap / (1.0 + c.value * c.value));
    double mass = 0.0;
    for (double m : c.measure) {
      out.require(m >= 0.0, "negative measure weight");
      mass += m;
    }
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    Rng rng(seed, 3000 + t);
    for (int k = 0; k < 1000; ++k) {
      const auto alpha = rng.unit_vector(psi.dim());
      worst_slack = std::min(worst_slack, domination_slack(psi, c, alpha));
    }
  }
  out.require(worst_gap <= 1e-6, "relative gap " + num(worst_gap));
  out.require(worst_slack >= -1e-8, "domination slack " + num(worst_slack));
  out.require(worst_mass <= 1e-9, "measure mass defect " + num(worst_mass));
  out.detail << "100 instances; max gap/(1+a2^2) " << num(worst_gap) << ", min slack "
             << num(worst_slack);
}

void criterion_row_norm(Outcome& out, std::uint64_t seed) {
  const auto instances = pietsch_instances(seed);
  double worst_witness = INFINITY;
  double worst_excess = -INFINITY;
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const auto& psi = instances[t];
    const auto c = two_summing_norm(psi);
    auto family = witness_family(c);
    family.resize(psi.dim(), CVector(psi.dim(), cx{}));
    worst_witness = std::min(worst_witness, row_ratio(psi, family) - c.value);
    const std::size_t d = psi.dim();
    for (std::size_t rows = 1; rows <= 3; ++rows)
      for (std::size_t cols = 1; cols <= std::max<std::size_t>(d, 3); ++cols) {
        const double level = cb_level_norm(psi, Side::row, rows, cols, 5, seed + t);
        worst_excess = std::max(worst_excess, level - c.value);
      }
  }
  out.require(worst_witness >= -1e-6, "witness shortfall " + num(-worst_witness));
  out.require(worst_excess <= 1e-8, "sampled level exceeds a2 by " + num(worst_excess));
  out.detail << "min witness ratio - a2 " << num(worst_witness) << ", max sampled level - a2 "
             << num(worst_excess);
}

SubspaceMap first_row_map(std::size_t m, double scale) {
  SubspaceMap psi{MatrixBasis{m, {}}, {}};
  auto& mb = std::get<MatrixBasis>(psi.domain);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      mb.elements.push_back(ComplexMatrix::unit(m, m, i, j));
      CVector y(m, cx{});
      if (i == 0) y[j] = scale;
      psi.images.push_back(std::move(y));
    }
  return psi;
}

void criterion_state(Outcome& out, std::uint64_t) {
  double worst_value = 0.0;
  double worst_slack = INFINITY;
  double least_scaled = INFINITY;
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto psi = first_row_map(m, 1.0);
    const auto c = dominating_state(psi, Side::row);
    worst_value = std::max(worst_value, std::abs(c.value - 1.0));
    const ComplexMatrix slack =
        c.value * c.value * state_gram(psi, c.density, Side::row) - image_gram(psi);
    worst_slack = std::min(worst_slack, min_eigenvalue(hermitian_part(slack)));
    out.require(std::abs(c.density.trace() - 1.0) <= 1e-9, "density trace");
    out.require(min_eigenvalue(hermitian_part(c.density)) >= -1e-9, "density positivity");
    try {
      least_scaled = std::min(least_scaled,
                              dominating_state(first_row_map(m, 2.0), Side::row, {1e-8, true}).value);
    } catch (const Error& e) {
      out.require(e.code() == ErrorCode::Infeasible, std::string("scaled map: ") + e.what());
    }
  }
  out.require(worst_value <= 1e-6, "state value off by " + num(worst_value));
  out.require(worst_slack >= -1e-8, "Gram domination slack " + num(worst_slack));
  out.require(least_scaled >= 2.0 - 1e-6, "scaled map value " + num(least_scaled));
  out.detail << "m=1..6: max |value-1| " << num(worst_value) << ", min slack " << num(worst_slack)
             << "; scaled maps certified infeasible";
}

void criterion_polarization(Outcome& out, std::uint64_t seed) {
  double form_err = 0.0;
  double family_err = 0.0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    Rng rng(seed, 5000 + r);
    const std::size_t d = 1 + rng.index(6);
    const auto t0 = rng.complex_matrix(d, d);
    const auto t = polarization_reconstruct(
        {d, [&](std::span<const cx> h) { return inner(t0 * h, h); }}, seed + r);
    form_err = std::max(form_err, (t - t0).max_abs());

    const std::size_t m = 2 + rng.index(5);
    const std::size_t k = 1 + rng.index(m);
    const auto v = rng.isometry(m, k);
    const auto phi = assemble_positive_map({k, m,
                                            [&](std::span<const cx> h) {
                                              const CVector vh = v * h;
                                              return outer(vh, vh);
                                            }},
                                           5, seed + r);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto e = ComplexMatrix::unit(m, m, i, j);
        family_err = std::max(family_err, (phi.unit_image(i, j) - v.adjoint() * e * v).max_abs());
      }
  }
  out.require(form_err <= 1e-10, "form reconstruction error " + num(form_err));
  out.require(family_err <= 1e-8, "positive map reconstruction error " + num(family_err));
  out.detail << "100 rounds; form error " << num(form_err) << ", map error " << num(family_err);
}

void criterion_naimark(Outcome& out, std::uint64_t seed) {
  double iso = 0.0;
  double comp = 0.0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    Rng rng(seed, 6000 + r);
    const std::size_t d = 1 + rng.index(6);
    const auto f = random_povm(rng, d, 1 + rng.index(8));
    const auto dil = naimark_dilate(f);
    iso = std::max(iso, (adjoint_times(dil.isometry, dil.isometry) - ComplexMatrix::identity(d)).max_abs());
    for (std::size_t x = 0; x < f.size(); ++x)
      comp = std::max(comp, (adjoint_times(dil.isometry, dil.projections[x] * dil.isometry) - f[x]).max_abs());
  }
  out.require(iso <= 1e-8, "V*V - I " + num(iso));
  out.require(comp <= 1e-8, "V*E_xV - F_x " + num(comp));
  out.detail << "100 POVMs; max |V*V - I| " << num(iso) << ", max |V*E_xV - F_x| " << num(comp);
}

void criterion_bootstrap(Outcome& out, std::uint64_t seed) {
  const auto reps = builtin_representations();
  std::vector<double> two(reps.size(), INFINITY);
  std::vector<double> many(reps.size(), INFINITY);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (const Side side : {Side::row, Side::column}) {
      two[k] = std::min(two[k], rn_margin(reps[k].rho, 2, 2000, seed + k, side));
      for (std::size_t n = 1; n <= 8; ++n)
        many[k] = std::min(many[k], rn_margin(reps[k].rho, n, 2000, seed + 100 * n + k, side));
    }
  }
  const auto lo2 = std::min_element(two.begin(), two.end());
  const auto lon = std::min_element(many.begin(), many.end());
  out.require(*lo2 >= -1e-8, "R2/C2 margin " + num(*lo2) + " for " + reps[lo2 - two.begin()].name);
  out.require(*lon >= -1e-7, "Rn/Cn margin " + num(*lon) + " for " + reps[lon - many.begin()].name);
  out.detail << reps.size() << " representations; min R2/C2 margin " << num(*lo2)
             << ", min Rn/Cn margin (n<=8) " << num(*lon);
}

void criterion_extension(Outcome& out, std::uint64_t seed) {
  const auto reps = builtin_representations();
  double ext = 0.0;
  double schwarz = INFINITY;
  double para = 0.0;
  double spread = 0.0;
  double identity_err = 0.0;
  for (const auto& [name, rho] : reps) {
    ExtensionOptions opts;
    opts.functional.seed = seed;
    const auto rep = positive_extension(rho, opts);
    ext = std::max(ext, rep.extension_error);
    schwarz = std::min(schwarz, rep.schwarz_gap);
    para = std::max(para, rep.parallelogram_residual);
    spread = std::max(spread, rep.uniqueness_spread);
    if (name.rfind("identity", 0) == 0) {
      const std::size_t n = rho.pattern.size();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          identity_err = std::max(
              identity_err,
              (rep.map.unit_image(i, j) - ComplexMatrix::unit(n, n, i, j)).max_abs());
    }
  }
  out.require(ext <= 1e-7, "extension error " + num(ext));
  out.require(schwarz >= -1e-7, "Schwarz gap " + num(schwarz));
  out.require(para <= 1e-6, "parallelogram residual " + num(para));
  out.require(spread <= 1e-6, "uniqueness spread " + num(spread));
  out.require(identity_err <= 1e-7, "identity extension error " + num(identity_err));
  out.detail << reps.size() << " representations; extension error " << num(ext)
             << ", min Schwarz gap " << num(schwarz) << ", parallelogram " << num(para)
             << ", spread " << num(spread);
}

void criterion_fejer_outer(Outcome& out, std::uint64_t seed) {
  double worst_fr = 0.0;
  double least_root = INFINITY;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(seed, 9000 + t);
    const std::size_t m = 1 + rng.index(16);
    CVector roots(m);
    for (auto& z : roots) {
      const double kind = rng.uniform();
      const double modulus =
          kind < 0.15 ? 1.0 : (kind < 0.5 ? rng.uniform(0.3, 0.95) : rng.uniform(1.05, 3.0));
      z = std::polar(modulus, rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    const auto p = modulus_squared(poly_from_roots(roots, rng.complex_normal()));
    const auto q = fejer_riesz(p);
    worst_fr = std::max(worst_fr, fejer_riesz_error(p, q) / (1.0 + p.sup_norm()));
    least_root = std::min(least_root, min_root_modulus(q));
  }
  out.require(worst_fr <= 1e-8, "Fejer-Riesz error " + num(worst_fr));
  out.require(least_root >= 1.0 - 1e-7, "root modulus " + num(least_root));

  const std::vector<std::function<double(double)>> smooth{
      [](double t) { return std::exp(std::cos(t)); },
      [](double t) { return 1.5 + std::sin(t); },
      [](double t) { return 1.0 / (1.2 + std::cos(t)); },
      [](double t) { return 2.0 + std::cos(3.0 * t) + 0.5 * std::sin(t); },
  };
  double worst_outer = 0.0;
  for (const auto& f : smooth)
    worst_outer = std::max(worst_outer, logmodular_witness(f, 1.0, 12).error);
  // 2 + 2 cos + 1e-4 has log singularities 0.01 from the circle; check the grid.
  const auto f = sample([](double t) { return 2.0 + 2.0 * std::cos(t) + 1e-4; }, 12);
  const auto a = outer_function(f);
  for (std::size_t j = 0; j < a.size(); ++j)
    worst_outer = std::max(worst_outer, std::abs(std::norm(a.values[j]) - f.values[j].real()));
  out.require(worst_outer <= 1e-6, "outer reconstruction error " + num(worst_outer));
  out.detail << "200 round trips: max error/(1+|p|) " << num(worst_fr) << ", min root modulus "
             << num(least_root) << "; outer error at N=4096 " << num(worst_outer);
}

struct Entry {
  int id;
  const char* title;
  void (*run)(Outcome&, std::uint64_t);
};

constexpr Entry kCriteria[] = {
    {1, "logmodular iff block upper triangular (n <= 4)", criterion_logmodular},
    {2, "Pietsch duality and domination", criterion_pietsch},
    {3, "2-summing norm equals the row cb norm", criterion_row_norm},
    {4, "dominating state for x -> e1^* x", criterion_state},
    {5, "polarization of forms and positive-map families", criterion_polarization},
    {6, "Naimark dilation of random POVMs", criterion_naimark},
    {7, "R2/C2 contractivity bootstraps to Rn/Cn", criterion_bootstrap},
    {8, "positive extension of representations", criterion_extension},
    {9, "Fejer-Riesz and outer factorization", criterion_fejer_outer},
};

}  // namespace

std::vector<int> acceptance_ids() {
  std::vector<int> ids;
  for (const auto& e : kCriteria) ids.push_back(e.id);
  return ids;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto it = std::find_if(std::begin(kCriteria), std::end(kCriteria),
                               [&](const Entry& e) { return e.id == id; });
  if (it == std::end(kCriteria)) {
    throw Error(ErrorCode::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  }
  CriterionResult result;
  result.id = id;
  result.title = it->title;
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(out, seed);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail << "exception: " << e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.passed = out.passed;
  result.detail = out.detail.str();
  return result;
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "criterion %d %s", r.id, r.passed ? "PASS" : "FAIL");
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", r.seconds);
  return std::string(head) + "  " + r.title + "  (" + time + ")  " + r.detail;
}

}  // namespace logmod
