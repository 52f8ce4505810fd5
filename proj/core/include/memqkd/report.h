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
#include <string_view>

#include "memqkd/experiment.h"
#include "memqkd/histogram.h"
#include "memqkd/keyrate.h"

namespace memqkd {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_roundtrip(double value);

/// `value` with `digits` significant digits, locale independent.
std::string format_sig(double value, int digits = 10);

/// Per-pulse CSV:
/// index,emit_time_ns,state,mu_eff,bob_basis,clicks_d0,clicks_d1,leak_clicks,sifted,error
void write_pulse_csv(std::ostream &out, const ExperimentResult &result);

/// bin_start_ns,count
void write_histogram_csv(std::ostream &out, const Histogram &h);

/// mu,qber,rate (one row per grid cell)
void write_keyrate_csv(std::ostream &out, const KeyRateMap &map);

/// mu,qber_star
void write_boundary_csv(std::ostream &out, const KeyRateMap &map);

/// Plain `key = value` summary of a run, one entry per line.
std::string summary_text(const ExperimentResult &result, std::string_view label);

}  // namespace memqkd
