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

#include <cstdint>
#include <string>
#include <vector>

namespace logmod {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Identifiers of the in-process acceptance criteria, in order.
std::vector<int> acceptance_ids();

/// Runs one acceptance criterion. Throws InvalidArgument for unknown ids.
/// Numerical exceptions inside a criterion are reported as failures.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);

/// "criterion <id> PASS|FAIL  <title>  (<seconds>s)  <detail>"
std::string format_result(const CriterionResult& r);

}  // namespace logmod
