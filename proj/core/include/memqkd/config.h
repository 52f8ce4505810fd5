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

#include <stdexcept>
#include <string>
#include <string_view>

#include "memqkd/sim_config.h"

namespace memqkd {

/// Configuration error. line() is the 1-based line in the parsed document,
/// or 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(int line, const std::string &message);
    int line() const noexcept { return line_; }

   private:
    int line_;
};

/// Parses an INI-style document with sections [source], [channel], [memory],
/// [analysis] and [run]. Omitted keys keep their defaults; unknown sections
/// or keys, malformed lines and out-of-range values raise ConfigError.
///
///     [channel]
///     transmission = 0.59   # comments start with '#' or ';'
RunConfig parse_config(std::string_view text);

/// Writes every field so that parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig &cfg);

}  // namespace memqkd
