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

#include <string>

#include <json.hpp>

#include "logmod/domination.hpp"
#include "logmod/extension.hpp"
#include "logmod/linalg.hpp"
#include "logmod/outer_fejer.hpp"
#include "logmod/pattern.hpp"

// JSON interchange. Complex numbers are [re, im]; matrices are
// {"rows", "cols", "data"} with row-major data; pattern indices are 1-based.
// Every decoder throws Error(ParseError) on malformed input.
namespace logmod::io {

using json = nlohmann::json;

json encode(cx z);
json encode(const CVector& v);
json encode(const ComplexMatrix& a);
json encode(const Pattern& p);
json encode(const BlockStructure& b);
json encode(const TrigPoly& p);
json encode(const AnalyticPoly& q);
json encode(const BoundaryFunction& f);
json encode(const SubspaceMap& psi);
json encode(const PatternRepresentation& rho);

cx decode_complex(const json& j);
CVector decode_vector(const json& j);
ComplexMatrix decode_matrix(const json& j);
Pattern decode_pattern(const json& j);
TrigPoly decode_trig_poly(const json& j);
AnalyticPoly decode_analytic_poly(const json& j);
BoundaryFunction decode_boundary(const json& j);
SubspaceMap decode_subspace_map(const json& j);
PatternRepresentation decode_representation(const json& j);

/// Canonical text: two-space indentation, shortest round-trip doubles,
/// trailing newline.
std::string dump(const json& j);
json parse(const std::string& text);
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace logmod::io
