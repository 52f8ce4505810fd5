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

#include <cstdint>
#include <string>

namespace memqkd {

enum class SourceMode { ordered, random };

/// Shot-by-shot channel gain distribution. Both have mean 1.
enum class GainModel { truncated_normal, lognormal };

/// How a pulse whose two basis detectors record equal nonzero counts is sifted.
enum class DoubleClickPolicy { random_bit, discard };

struct SourceConfig {
    double pulse_width_ns = 400.0;
    double pulse_period_ns = 40000.0;
    SourceMode mode = SourceMode::random;
    /// Mean photon number per pulse leaving the source.
    double mu_alice = 1.6 / 0.59;
    std::uint64_t n_pulses = 10000;

    void validate() const;

    bool operator==(const SourceConfig &) const = default;
};

struct ChannelConfig {
    double transmission = 0.59;
    /// Relative standard deviation of the per-pulse multiplicative gain.
    double rel_fluctuation = 0.05;
    GainModel gain_model = GainModel::truncated_normal;

    void validate() const;

    bool operator==(const ChannelConfig &) const = default;
};

/// Phenomenological memory: each photon leaks straight through, is stored and
/// retrieved into the region of interest (ROI), or is lost. Background photons
/// are unpolarized and Poisson distributed.
struct MemoryConfig {
    double retrieval_efficiency = 0.1;
    double leak_fraction = 0.3;
    /// Expected background photons per ROI per pulse before suppression.
    double background_mean = 0.16 / 3.2017;
    double retrieval_delay_ns = 1000.0;
    double roi_width_ns = 100.0;
    /// Multiplies background_mean; values below 1 model the noise-suppressed regime.
    double noise_suppression = 1.0;

    double effective_background() const noexcept { return background_mean * noise_suppression; }
    double roi_start_ns() const noexcept { return retrieval_delay_ns - 0.5 * roi_width_ns; }
    double roi_end_ns() const noexcept { return retrieval_delay_ns + 0.5 * roi_width_ns; }

    void validate() const;

    bool operator==(const MemoryConfig &) const = default;
};

struct AnalysisConfig {
    double bin_width_ns = 10.0;
    double record_start_ns = 0.0;
    double record_end_ns = 2000.0;
    double background_start_ns = 1100.0;
    double background_end_ns = 2000.0;
    DoubleClickPolicy double_click = DoubleClickPolicy::random_bit;

    /// Also checks the ROI and background region against the record window.
    void validate(const MemoryConfig &memory) const;

    bool operator==(const AnalysisConfig &) const = default;
};

struct RunConfig {
    SourceConfig source;
    ChannelConfig channel;
    MemoryConfig memory;
    AnalysisConfig analysis;
    std::uint64_t seed = 0;
    std::string output_dir;

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;

    /// Mean photon number arriving at the memory, mu_alice * transmission.
    double memory_input_mean() const noexcept { return source.mu_alice * channel.transmission; }

    /// Expected ROI signal-to-background ratio implied by the configuration.
    double expected_sbr() const;

    bool operator==(const RunConfig &) const = default;
};

const char *to_string(SourceMode mode) noexcept;
const char *to_string(GainModel model) noexcept;
const char *to_string(DoubleClickPolicy policy) noexcept;

}  // namespace memqkd
