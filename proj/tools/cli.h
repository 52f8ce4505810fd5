// Copyright 2026 The memqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace memqkd::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

/// Environment variable naming the default output directory.
inline constexpr const char *kOutputDirEnv = "MEMQKD_OUTPUT_DIR";

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace memqkd::cli
