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

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "memqkd/qubit.h"
#include "memqkd/rng.h"
#include "memqkd/sim_config.h"

namespace memqkd {

struct EmittedPulse {
    std::uint64_t index = 0;
    double emit_time_ns = 0.0;
    Polarization state = Polarization::H;

    bool operator==(const EmittedPulse &) const = default;
};

struct PulseRecord {
    std::uint64_t index = 0;
    double emit_time_ns = 0.0;
    Polarization state = Polarization::H;
    double mu_effective = 0.0;

    bool operator==(const PulseRecord &) const = default;
};

struct ArrivingPhotons {
    double gain = 1.0;
    double mu_effective = 0.0;
    std::uint64_t count = 0;
};

/// Photon bookkeeping at the memory output. retrieved + leaked + lost always
/// equals the number of photons that arrived.
struct MemoryOutput {
    Polarization state = Polarization::H;
    std::uint64_t retrieved = 0;
    std::uint64_t leaked = 0;
    std::uint64_t lost = 0;
    /// Unpolarized background photons inside the ROI.
    std::uint64_t background = 0;
};

/// Detector counts for one pulse. clicks[b] is the ROI count on the detector
/// of bob_basis that reports bit b.
struct ClickRecord {
    std::uint64_t pulse_index = 0;
    Basis bob_basis = Basis::Z;
    std::array<std::uint64_t, 2> clicks{0, 0};
    /// Counts in the leakage window (diagnostic only).
    std::uint64_t leak_clicks = 0;
    /// Split of the ROI counts by origin, for bookkeeping.
    std::uint64_t signal_clicks = 0;
    std::uint64_t background_clicks = 0;

    std::uint64_t roi_total() const noexcept { return clicks[0] + clicks[1]; }

    bool operator==(const ClickRecord &) const = default;
};

struct SiftOutcome {
    bool sifted = false;
    bool error = false;

    bool operator==(const SiftOutcome &) const = default;
};

struct SiftedSample {
    std::uint64_t n_sifted_z = 0;
    std::uint64_t n_sifted_x = 0;
    std::uint64_t n_err_z = 0;
    std::uint64_t n_err_x = 0;

    /// NaN when no pulse of that basis was sifted.
    double qber_z() const noexcept { return ratio(n_err_z, n_sifted_z); }
    double qber_x() const noexcept { return ratio(n_err_x, n_sifted_x); }
    /// Average of the two basis QBERs.
    double mean_qber() const noexcept { return 0.5 * (qber_z() + qber_x()); }

    void add(Basis basis, SiftOutcome outcome) noexcept;
    void merge(const SiftedSample &other) noexcept;

    bool operator==(const SiftedSample &) const = default;

   private:
    static double ratio(std::uint64_t num, std::uint64_t den) noexcept {
        return den == 0 ? std::numeric_limits<double>::quiet_NaN()
                        : static_cast<double>(num) / static_cast<double>(den);
    }
};

/// State of pulse `index`. Ordered mode cycles H, V, D, A; random mode draws
/// uniformly from the pulse's own source stream.
EmittedPulse emit_pulse(const SourceConfig &cfg, std::uint64_t seed, std::uint64_t index);

std::vector<EmittedPulse> generate_pulse_train(const SourceConfig &cfg, std::uint64_t seed);

/// Samples the turbulent channel gain and the Poisson photon number at the
/// memory input.
ArrivingPhotons sample_arriving_photons(double mu_alice, const ChannelConfig &channel, RandomStream &rng);

/// Splits `count` photons into leaked / retrieved / lost and draws ROI
/// background. Surviving photons keep the input polarization.
MemoryOutput apply_memory(std::uint64_t count, Polarization state, const MemoryConfig &memory, RandomStream &rng);

/// Picks Bob's basis (50/50 splitter) and routes every photon to a detector.
ClickRecord measure(std::uint64_t pulse_index, const MemoryOutput &photons, RandomStream &rng);

/// Sifts one pulse against the prepared state. The detector with more ROI
/// counts wins; equal nonzero counts are resolved by `policy`, drawing the
/// random bit from `rng`.
SiftOutcome sift_pulse(const ClickRecord &record, Polarization truth, DoubleClickPolicy policy, RandomStream &rng);

/// Sifts a full run. Records and truth must be aligned by pulse index; tie
/// bits come from the sifting stream of each pulse so the result does not
/// depend on processing order.
SiftedSample sift_and_estimate(
    std::span<const ClickRecord> records,
    std::span<const PulseRecord> truth,
    DoubleClickPolicy policy,
    std::uint64_t seed);

}  // namespace memqkd
