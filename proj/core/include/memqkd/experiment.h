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
#include <optional>
#include <string_view>
#include <vector>

#include "memqkd/histogram.h"
#include "memqkd/keyrate.h"
#include "memqkd/pipeline.h"
#include "memqkd/sim_config.h"

namespace memqkd {

/// Built-in parameter sets mirroring the five storage experiments.
enum class Preset { experiment1, experiment2, experiment3, experiment4, experiment5 };

inline constexpr Preset kAllPresets[] = {
    Preset::experiment1, Preset::experiment2, Preset::experiment3, Preset::experiment4, Preset::experiment5};

/// Retrieval efficiency shared by all presets. Background levels are then set
/// so each preset lands on its target SBR.
inline constexpr double kCalibratedRetrievalEfficiency = 0.1;

const char *preset_name(Preset preset) noexcept;
std::optional<Preset> preset_from_name(std::string_view name) noexcept;

/// Full run configuration for a preset.
///
///  - experiment1: ordered H,V,D,A train, 1.6 photons at the memory, SBR 6.25
///    (fidelity 0.92).
///  - experiment2: random states, ~100 photons at the memory, same memory
///    background as experiment3 (SBR ~200).
///  - experiment3: random states, 1.6 photons at the memory, SBR 3.2017
///    (oracle QBER 0.119).
///  - experiment4: experiment3 memory with noise suppression giving SBR 26 at
///    1.3 photons.
///  - experiment5: portable memory, 2 photons, SBR 7.2.
RunConfig preset_config(Preset preset);

/// Rescales mu_alice so that the mean photon number at the memory input is
/// `mu_in`, keeping every other parameter.
RunConfig with_memory_input_mean(RunConfig cfg, double mu_in);

/// background_mean that gives `target_sbr` at memory input mean `mu_in`.
/// Throws std::invalid_argument for nonpositive inputs.
double calibrate_background(double retrieval_efficiency, double mu_in, double target_sbr);

/// Aggregate photon bookkeeping over a run.
struct PhotonTally {
    std::uint64_t arrived = 0;
    std::uint64_t retrieved = 0;
    std::uint64_t leaked = 0;
    std::uint64_t lost = 0;
    std::uint64_t roi_background = 0;

    void merge(const PhotonTally &other) noexcept;
    bool operator==(const PhotonTally &) const = default;
};

struct ExperimentResult {
    RunConfig config;
    std::vector<PulseRecord> pulses;
    std::vector<ClickRecord> clicks;
    std::vector<SiftOutcome> outcomes;
    SiftedSample sifted;
    PhotonTally tally;
    /// Mean of mu_effective over all pulses (photons at the memory input).
    double mean_mu_in = 0.0;
    /// Per-pulse ROI signal and background means.
    SbrEstimate sbr;
    /// Arrival times of every detected photon relative to pulse emission.
    Histogram histogram;
};

/// Runs the full source -> channel -> memory -> receiver -> sifting pipeline.
/// Each pulse draws from streams derived from (seed, pulse index), so the
/// result is identical for any `workers` count.
ExperimentResult run_experiment(const RunConfig &cfg, unsigned workers = 1);

}  // namespace memqkd
