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

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "logmod/acceptance.hpp"
#include "logmod/domination.hpp"
#include "logmod/error.hpp"
#include "logmod/extension.hpp"
#include "logmod/outer_fejer.hpp"
#include "logmod/parallel.hpp"
#include "logmod/pattern.hpp"
#include "logmod/random.hpp"
#include "logmod/structured_factor.hpp"

namespace {

using logmod::io::json;
namespace io = logmod::io;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNumeric = 65;

struct Workspace {
  std::vector<std::string> inputs;
  std::string out;
  std::uint64_t seed = 0;
  double tol_psd = 1e-10;
  double tol_gap = 1e-8;
  double tol_recon = 1e-8;
};

int exit_code(logmod::ErrorCode code) {
  using logmod::ErrorCode;
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::TooLarge:
      return kExitUsage;
    case ErrorCode::NoConvergence:
    case ErrorCode::PrecisionUnreachable:
      return kExitNumeric;
    default:
      return kExitNegative;
  }
}

// Report goes to stdout; the artifact alone goes to --out when given.
int emit(const Workspace& ws, json report, const json& artifact, int code) {
  report["seed"] = ws.seed;
  report["result"] = artifact;
  std::cout << io::dump(report);
  if (!ws.out.empty()) io::write_file(ws.out, artifact);
  return code;
}

json one_based(const logmod::IndexPair& p) { return {p.first + 1, p.second + 1}; }

int cmd_decide(const Workspace& ws) {
  const auto p = io::decode_pattern(io::read_file(ws.inputs.at(0)));
  const auto verdict = logmod::decide_logmodular(p);
  json report{{"command", "decide"}, {"n", p.size()}};
  if (verdict.logmodular) {
    const auto& cert = *verdict.certificate;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 20; ++t) {
      logmod::Rng rng(ws.seed, t);
      const auto m = rng.positive_definite(p.size(), 0.1);
      worst = std::max(worst, logmod::factor_residual(logmod::structured_cholesky(m, cert), m));
    }
    report["oracle"] = {{"certificate_valid", cert.certifies(p)},
                        {"random_factorizations", 20},
                        {"max_residual", worst}};
    return emit(ws, report, {{"verdict", "logmodular"}, {"certificate", io::encode(cert)}}, kExitOk);
  }
  const auto ref = logmod::refute_logmodular(p, *verdict.witness, ws.seed);
  report["oracle"] = {{"test_matrix", io::encode(ref.test_matrix)},
                      {"residual_bound", ref.residual_bound},
                      {"certified", ref.certified}};
  return emit(ws, report,
              {{"verdict", "not logmodular"}, {"witness", one_based(*verdict.witness)}},
              kExitNegative);
}

int cmd_factor(const Workspace& ws) {
  const auto m = io::decode_matrix(io::read_file(ws.inputs.at(0)));
  const auto p = io::decode_pattern(io::read_file(ws.inputs.at(1)));
  if (m.rows() != p.size() || m.cols() != p.size()) {
    throw logmod::Error(logmod::ErrorCode::DimensionMismatch, "matrix size differs from the pattern");
  }
  const auto verdict = logmod::decide_logmodular(p);
  json report{{"command", "factor"}};
  logmod::ComplexMatrix a;
  double residual = 0.0;
  if (verdict.logmodular) {
    a = logmod::structured_cholesky(m, *verdict.certificate);
    residual = logmod::factor_residual(a, m);
    report["route"] = "structured";
  } else {
    logmod::FactorOptions opts;
    opts.seed = ws.seed;
    opts.psd_tol = ws.tol_psd;
    const auto r = logmod::factor_attempt(m, p, opts);
    a = r.factor;
    residual = r.residual;
    report["route"] = "descent";
    report["best_start"] = r.best_start;
  }
  report["residual"] = residual;
  report["tolerance"] = ws.tol_recon;
  const bool ok = residual <= ws.tol_recon;
  report["reconstructed"] = ok;
  return emit(ws, report, io::encode(a), ok ? kExitOk : kExitNegative);
}

int cmd_fejer(const Workspace& ws) {
  const auto p = io::decode_trig_poly(io::read_file(ws.inputs.at(0)));
  const auto q = logmod::fejer_riesz(p);
  const double sup = p.sup_norm();
  const double err = logmod::fejer_riesz_error(p, q);
  json report{{"command", "fejer"}, {"error", err}, {"sup_norm", sup}};
  return emit(ws, report, io::encode(q),
              err <= ws.tol_recon * (1.0 + sup) ? kExitOk : kExitNumeric);
}

// Trigonometric interpolant of grid values on the grid of twice the size.
logmod::CVector refine(const logmod::CVector& v) {
  const std::size_t n = v.size();
  const auto hat = logmod::dft(v, -1);
  logmod::CVector padded(2 * n, logmod::cx{});
  if (n == 1) {
    padded[0] = hat[0];
  } else {
    for (std::size_t k = 0; k < n / 2; ++k) padded[k] = hat[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) padded[k + n] = hat[k];
    padded[n / 2] = 0.5 * hat[n / 2];
    padded[n + n / 2] = 0.5 * hat[n / 2];
  }
  auto out = logmod::dft(padded, +1);
  for (auto& z : out) z /= static_cast<double>(n);
  return out;
}

int cmd_outer(const Workspace& ws, double eps) {
  const auto f = io::decode_boundary(io::read_file(ws.inputs.at(0)));
  const auto a = logmod::outer_function(f);
  const auto fine_f = refine(f.values);
  const auto fine_a = refine(a.values);
  double grid_err = 0.0;
  double mid_err = 0.0;
  for (std::size_t j = 0; j < fine_f.size(); ++j) {
    const double e = std::abs(std::norm(fine_a[j]) - fine_f[j].real());
    (j % 2 == 0 ? grid_err : mid_err) = std::max(j % 2 == 0 ? grid_err : mid_err, e);
  }
  json report{{"command", "outer"},
              {"grid_error", grid_err},
              {"midpoint_error", mid_err},
              {"eps", eps},
              {"winding_number", logmod::winding_number(a)}};
  return emit(ws, report, io::encode(a),
              std::max(grid_err, mid_err) <= eps ? kExitOk : kExitNumeric);
}

double sampled_slack(const logmod::SubspaceMap& psi, const logmod::DominationCertificate& c,
                     std::uint64_t seed) {
  logmod::Rng rng(seed, 0xa2);
  double worst = INFINITY;
  for (int k = 0; k < 1000; ++k) {
    worst = std::min(worst, logmod::domination_slack(psi, c, rng.unit_vector(psi.dim())));
  }
  return worst;
}

int cmd_a2(const Workspace& ws) {
  const auto psi = io::decode_subspace_map(io::read_file(ws.inputs.at(0)));
  if (!psi.on_functions()) {
    throw logmod::Error(logmod::ErrorCode::InvalidArgument, "a2 needs a map on functions");
  }
  const auto c = logmod::two_summing_norm(psi, ws.tol_gap);
  const double slack = sampled_slack(psi, c, ws.seed);
  json report{{"command", "a2"}, {"gap", c.gap}, {"sampled_slack", slack}, {"samples", 1000}};
  json cert{{"value", c.value}, {"measure", c.measure}, {"dual", io::encode(c.dual)}, {"gap", c.gap}};
  return emit(ws, report, cert, slack >= -ws.tol_psd * (1.0 + c.value * c.value) ? kExitOk : kExitNumeric);
}

int cmd_dominate(const Workspace& ws, const std::string& side_name, bool contractive) {
  const auto psi = io::decode_subspace_map(io::read_file(ws.inputs.at(0)));
  const auto side = side_name == "column" ? logmod::Side::column : logmod::Side::row;
  json report{{"command", "dominate"}, {"side", side_name}};
  logmod::DominationCertificate c;
  if (psi.on_functions()) {
    c = logmod::two_summing_norm(psi, ws.tol_gap);
    if (contractive && c.value > 1.0 + 1e-6) {
      throw logmod::Error(logmod::ErrorCode::Infeasible, "2-summing norm exceeds 1");
    }
    report["sampled_slack"] = sampled_slack(psi, c, ws.seed);
    return emit(ws, report, {{"value", c.value}, {"measure", c.measure}, {"gap", c.gap}}, kExitOk);
  }
  c = logmod::dominating_state(psi, side, {ws.tol_gap, contractive});
  const auto slack = c.value * c.value * logmod::state_gram(psi, c.density, side) -
                     logmod::image_gram(psi);
  const double lo = logmod::min_eigenvalue(logmod::hermitian_part(slack));
  report["gram_slack"] = lo;
  return emit(ws, report, {{"value", c.value}, {"density", io::encode(c.density)}, {"gap", c.gap}},
              lo >= -ws.tol_psd * (1.0 + c.value * c.value) ? kExitOk : kExitNumeric);
}

int cmd_extend(const Workspace& ws) {
  const auto rho = io::decode_representation(io::read_file(ws.inputs.at(0)));
  logmod::ExtensionOptions opts;
  opts.functional.seed = ws.seed;
  opts.functional.tol = ws.tol_gap;
  const auto r = logmod::positive_extension(rho, opts);
  json report{{"command", "extend"},
              {"extension_error", r.extension_error},
              {"schwarz_gap", r.schwarz_gap},
              {"parallelogram_residual", r.parallelogram_residual},
              {"uniqueness_spread", r.uniqueness_spread},
              {"positivity", r.positivity}};
  json artifact{{"m", r.map.m}, {"d", r.map.d}, {"choi", io::encode(r.map.choi)}};
  const bool ok = r.extension_error <= ws.tol_recon && r.schwarz_gap >= -ws.tol_recon;
  return emit(ws, report, artifact, ok ? kExitOk : kExitNumeric);
}

int cmd_selftest(const Workspace& ws, const std::vector<int>& only) {
  bool all = true;
  for (int id : logmod::acceptance_ids()) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto r = logmod::run_criterion(id, ws.seed);
    std::cout << logmod::format_result(r) << std::endl;
    all = all && r.passed;
  }
  std::cout << "seed " << ws.seed << ", " << logmod::thread_cap() << " threads: "
            << (all ? "all criteria passed" : "FAILED") << std::endl;
  return all ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logmod: logmodular patterns, outer factorization, domination and positive extension"};
  app.require_subcommand(1);
  app.fallthrough();
  Workspace ws;
  app.add_option("--seed", ws.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--tol-psd", ws.tol_psd, "positivity tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol-gap", ws.tol_gap, "duality gap tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol-recon", ws.tol_recon, "reconstruction tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", ws.out, "write the result artifact to this file");

  auto input = [&](CLI::App* sub, const char* name, const char* what) {
    sub->add_option(name, ws.inputs, what)->required()->check(CLI::ExistingFile);
  };
  auto* decide = app.add_subcommand("decide", "decide logmodularity of a pattern");
  input(decide, "pattern", "pattern file");
  auto* factor = app.add_subcommand("factor", "factor P = A*A with A in the pattern algebra");
  factor->add_option("files", ws.inputs, "matrix file, then pattern file")->required()->expected(2)->check(CLI::ExistingFile);
  auto* fejer = app.add_subcommand("fejer", "Fejer-Riesz factor of a nonnegative trigonometric polynomial");
  input(fejer, "coeffs", "trigonometric polynomial file");
  auto* outer = app.add_subcommand("outer", "outer factor of positive boundary samples");
  input(outer, "samples", "boundary function file");
  double eps = 1e-6;
  outer->add_option("--eps", eps, "accepted reconstruction error")->check(CLI::PositiveNumber)->capture_default_str();
  auto* a2 = app.add_subcommand("a2", "2-summing norm with Pietsch measure");
  input(a2, "map", "subspace map file");
  auto* dominate = app.add_subcommand("dominate", "dominating measure or state");
  input(dominate, "map", "subspace map file");
  std::string side = "row";
  bool contractive = false;
  dominate->add_option("--side", side, "row or column")->check(CLI::IsMember({"row", "column"}))->capture_default_str();
  dominate->add_flag("--contractive", contractive, "fail when the value exceeds 1");
  auto* extend = app.add_subcommand("extend", "positive extension of a pattern representation");
  input(extend, "representation", "representation file");
  auto* selftest = app.add_subcommand("selftest", "run acceptance criteria 1-9");
  std::vector<int> only;
  selftest->add_option("--criterion", only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*decide) return cmd_decide(ws);
    if (*factor) return cmd_factor(ws);
    if (*fejer) return cmd_fejer(ws);
    if (*outer) return cmd_outer(ws, eps);
    if (*a2) return cmd_a2(ws);
    if (*dominate) return cmd_dominate(ws, side, contractive);
    if (*extend) return cmd_extend(ws);
    if (*selftest) return cmd_selftest(ws, only);
  } catch (const logmod::Error& e) {
    std::cerr << "logmod: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "logmod: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
