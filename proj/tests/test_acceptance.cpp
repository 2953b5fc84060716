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

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "logmod/acceptance.hpp"

// Runs acceptance criteria 1-9 in process, then criterion 10: the CLI
// selftest must exit 0 within 15 minutes.
int main() {
  bool all = true;
  for (int id : logmod::acceptance_ids()) {
    const auto r = logmod::run_criterion(id, 0);
    std::cout << logmod::format_result(r) << std::endl;
    all = all && r.passed;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::string cmd = std::string(LOGMOD_CLI) + " selftest > /dev/null";
  const int status = std::system(cmd.c_str());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const bool passed = code == 0 && seconds < 900.0;
  std::cout << "criterion 10 " << (passed ? "PASS" : "FAIL")
            << "  logmod selftest exits 0 within 15 minutes  (" << seconds << "s)  exit code "
            << code << std::endl;
  all = all && passed;
  return all ? 0 : 1;
}
