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

#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "logmod/error.hpp"

namespace logmod::io {
namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j) {
  if (!j.is_number()) fail("expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail("non-finite number");
  return v;
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

}  // namespace

json encode(cx z) { return json::array({z.real(), z.imag()}); }

json encode(const CVector& v) {
  json out = json::array();
  for (const cx& z : v) out.push_back(encode(z));
  return out;
}

json encode(const ComplexMatrix& a) {
  json data = json::array();
  for (const cx& z : a.data()) data.push_back(encode(z));
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

json encode(const Pattern& p) {
  json pairs = json::array();
  for (const auto& [i, j] : p.pairs()) pairs.push_back({i + 1, j + 1});
  return {{"n", p.size()}, {"pairs", std::move(pairs)}};
}

json encode(const BlockStructure& b) {
  json perm = json::array();
  for (auto k : b.permutation) perm.push_back(k + 1);
  return {{"permutation", std::move(perm)}, {"blocks", b.block_sizes}};
}

json encode(const TrigPoly& p) { return {{"degree", p.degree}, {"coeffs", encode(p.coeffs)}}; }

json encode(const AnalyticPoly& q) { return {{"coeffs", encode(q.coeffs)}}; }

json encode(const BoundaryFunction& f) {
  return {{"grid_log2", f.grid_log2}, {"values", encode(f.values)}};
}

json encode(const SubspaceMap& psi) {
  json out;
  json elements = json::array();
  if (psi.on_functions()) {
    const auto& fb = std::get<FunctionBasis>(psi.domain);
    out["kind"] = "functions";
    out["points"] = fb.points;
    for (const auto& e : fb.elements) elements.push_back(encode(e));
  } else {
    const auto& mb = std::get<MatrixBasis>(psi.domain);
    out["kind"] = "matrices";
    out["size"] = mb.size;
    for (const auto& e : mb.elements) elements.push_back(encode(e));
  }
  json images = json::array();
  for (const auto& y : psi.images) images.push_back(encode(y));
  out["elements"] = std::move(elements);
  out["images"] = std::move(images);
  return out;
}

json encode(const PatternRepresentation& rho) {
  json images = json::array();
  for (const auto& [pair, m] : rho.images) {
    images.push_back({{"pair", {pair.first + 1, pair.second + 1}}, {"matrix", encode(m)}});
  }
  return {{"pattern", encode(rho.pattern)}, {"dim", rho.dim}, {"images", std::move(images)}};
}

cx decode_complex(const json& j) {
  if (j.is_number()) return {number(j), 0.0};
  if (!j.is_array() || j.size() != 2) fail("complex number must be [re, im]");
  return {number(j[0]), number(j[1])};
}

CVector decode_vector(const json& j) {
  CVector out;
  for (const auto& z : array(j, "vector")) out.push_back(decode_complex(z));
  return out;
}

ComplexMatrix decode_matrix(const json& j) {
  const std::size_t rows = count(field(j, "rows"), "rows");
  const std::size_t cols = count(field(j, "cols"), "cols");
  const json& data = array(field(j, "data"), "data");
  if (data.size() != rows * cols) fail("matrix data length differs from rows*cols");
  ComplexMatrix a(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) a.data()[k] = decode_complex(data[k]);
  return a;
}

Pattern decode_pattern(const json& j) {
  const std::size_t n = count(field(j, "n"), "n");
  if (n == 0) fail("pattern size must be positive");
  if (n > Pattern::kMaxSize) throw Error(ErrorCode::TooLarge, "pattern size exceeds 64");
  Pattern p(n);
  for (const auto& pair : array(field(j, "pairs"), "pairs")) {
    if (!pair.is_array() || pair.size() != 2) fail("pattern pair must be [i, j]");
    const std::size_t i = count(pair[0], "pattern index");
    const std::size_t k = count(pair[1], "pattern index");
    if (i < 1 || i > n || k < 1 || k > n) fail("pattern index out of range");
    p.insert(i - 1, k - 1);
  }
  return p;
}

TrigPoly decode_trig_poly(const json& j) {
  TrigPoly p;
  p.degree = count(field(j, "degree"), "degree");
  p.coeffs = decode_vector(field(j, "coeffs"));
  if (p.coeffs.size() != 2 * p.degree + 1) fail("trigonometric polynomial needs 2*degree+1 coefficients");
  return p;
}

AnalyticPoly decode_analytic_poly(const json& j) {
  AnalyticPoly q{decode_vector(field(j, "coeffs"))};
  if (q.coeffs.empty()) fail("polynomial has no coefficients");
  return q;
}

BoundaryFunction decode_boundary(const json& j) {
  BoundaryFunction f;
  const std::size_t k = count(field(j, "grid_log2"), "grid_log2");
  if (k > 24) fail("grid_log2 above 24");
  f.grid_log2 = static_cast<int>(k);
  f.values = decode_vector(field(j, "values"));
  if (f.values.size() != (std::size_t{1} << k)) fail("values length differs from 2^grid_log2");
  return f;
}

SubspaceMap decode_subspace_map(const json& j) {
  const json& kind = field(j, "kind");
  SubspaceMap psi;
  const json& elements = array(field(j, "elements"), "elements");
  if (kind == "functions") {
    FunctionBasis fb{count(field(j, "points"), "points"), {}};
    for (const auto& e : elements) fb.elements.push_back(decode_vector(e));
    psi.domain = std::move(fb);
  } else if (kind == "matrices") {
    MatrixBasis mb{count(field(j, "size"), "size"), {}};
    for (const auto& e : elements) mb.elements.push_back(decode_matrix(e));
    psi.domain = std::move(mb);
  } else {
    fail("kind must be \"functions\" or \"matrices\"");
  }
  for (const auto& y : array(field(j, "images"), "images")) psi.images.push_back(decode_vector(y));
  validate(psi);
  return psi;
}

PatternRepresentation decode_representation(const json& j) {
  PatternRepresentation rho;
  rho.pattern = decode_pattern(field(j, "pattern"));
  rho.dim = count(field(j, "dim"), "dim");
  for (const auto& item : array(field(j, "images"), "images")) {
    const json& pair = field(item, "pair");
    if (!pair.is_array() || pair.size() != 2) fail("image pair must be [i, j]");
    const std::size_t i = count(pair[0], "pair index");
    const std::size_t k = count(pair[1], "pair index");
    if (i < 1 || k < 1) fail("pair indices are 1-based");
    if (!rho.images.emplace(IndexPair{i - 1, k - 1}, decode_matrix(field(item, "matrix"))).second) {
      fail("duplicate image pair");
    }
  }
  validate(rho);
  return rho;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << dump(j);
}

}  // namespace logmod::io
