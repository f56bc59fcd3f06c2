/*
  Copyright 2026 The spinegrow Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/
// Standalone runner for the randomized property suites.
#include <cstdio>

#include "support/property.hpp"

int main() {
  int failed = 0;
  for (const auto& r : sgtest::run_property_suites()) {
    std::printf("%s %s (%d cases)%s%s\n", r.ok ? "PASS" : "FAIL", r.name.c_str(), r.cases,
                r.ok ? "" : " ", r.counterexample.c_str());
    failed += r.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
