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

#include "memqkd/pipeline.h"

#include <cmath>
#include <stdexcept>

namespace memqkd {

void SiftedSample::add(Basis basis, SiftOutcome outcome) noexcept {
    if (!outcome.sifted) {
        return;
    }
    if (basis == Basis::Z) {
        n_sifted_z++;
        n_err_z += outcome.error ? 1 : 0;
    } else {
        n_sifted_x++;
        n_err_x += outcome.error ? 1 : 0;
    }
}

void SiftedSample::merge(const SiftedSample &other) noexcept {
    n_sifted_z += other.n_sifted_z;
    n_sifted_x += other.n_sifted_x;
    n_err_z += other.n_err_z;
    n_err_x += other.n_err_x;
}

EmittedPulse emit_pulse(const SourceConfig &cfg, std::uint64_t seed, std::uint64_t index) {
    EmittedPulse pulse;
    pulse.index = index;
    pulse.emit_time_ns = static_cast<double>(index) * cfg.pulse_period_ns;
    if (cfg.mode == SourceMode::ordered) {
        pulse.state = kAllPolarizations[index % 4];
    } else {
        auto rng = RandomStream::for_pulse(seed, index, StreamTag::source);
        pulse.state = kAllPolarizations[rng.uniform_below(4)];
    }
    return pulse;
}

std::vector<EmittedPulse> generate_pulse_train(const SourceConfig &cfg, std::uint64_t seed) {
    std::vector<EmittedPulse> train;
    train.reserve(cfg.n_pulses);
    for (std::uint64_t k = 0; k < cfg.n_pulses; k++) {
        train.push_back(emit_pulse(cfg, seed, k));
    }
    return train;
}

ArrivingPhotons sample_arriving_photons(double mu_alice, const ChannelConfig &channel, RandomStream &rng) {
    ArrivingPhotons out;
    const double sigma = channel.rel_fluctuation;
    if (sigma > 0.0) {
        if (channel.gain_model == GainModel::truncated_normal) {
            do {
                out.gain = 1.0 + sigma * rng.standard_normal();
            } while (out.gain <= 0.0);
        } else {
            const double s2 = std::log1p(sigma * sigma);
            out.gain = std::exp(std::sqrt(s2) * rng.standard_normal() - 0.5 * s2);
        }
    }
    out.mu_effective = mu_alice * channel.transmission * out.gain;
    out.count = rng.poisson(out.mu_effective);
    return out;
}

MemoryOutput apply_memory(std::uint64_t count, Polarization state, const MemoryConfig &memory, RandomStream &rng) {
    MemoryOutput out;
    out.state = state;
    const double leak_cut = memory.leak_fraction;
    const double retrieve_cut = memory.leak_fraction + memory.retrieval_efficiency;
    for (std::uint64_t k = 0; k < count; k++) {
        double u = rng.uniform();
        if (u < leak_cut) {
            out.leaked++;
        } else if (u < retrieve_cut) {
            out.retrieved++;
        } else {
            out.lost++;
        }
    }
    out.background = rng.poisson(memory.effective_background());
    return out;
}

ClickRecord measure(std::uint64_t pulse_index, const MemoryOutput &photons, RandomStream &rng) {
    ClickRecord record;
    record.pulse_index = pulse_index;
    record.bob_basis = rng.uniform_below(2) == 0 ? Basis::Z : Basis::X;

    const double p_bit0 = detection_probability(photons.state, record.bob_basis, detector_for(record.bob_basis, 0));
    for (std::uint64_t k = 0; k < photons.retrieved; k++) {
        record.clicks[rng.uniform() < p_bit0 ? 0 : 1]++;
    }
    for (std::uint64_t k = 0; k < photons.background; k++) {
        record.clicks[rng.uniform() < 0.5 ? 0 : 1]++;
    }
    record.signal_clicks = photons.retrieved;
    record.background_clicks = photons.background;
    record.leak_clicks = photons.leaked;
    return record;
}

SiftOutcome sift_pulse(const ClickRecord &record, Polarization truth, DoubleClickPolicy policy, RandomStream &rng) {
    if (record.bob_basis != basis_of(truth) || record.roi_total() == 0) {
        return {};
    }
    int decoded;
    if (record.clicks[0] != record.clicks[1]) {
        decoded = record.clicks[0] > record.clicks[1] ? 0 : 1;
    } else if (policy == DoubleClickPolicy::discard) {
        return {};
    } else {
        decoded = static_cast<int>(rng.uniform_below(2));
    }
    return {true, decoded != bit_of(truth)};
}

SiftedSample sift_and_estimate(
    std::span<const ClickRecord> records,
    std::span<const PulseRecord> truth,
    DoubleClickPolicy policy,
    std::uint64_t seed) {
    if (records.size() != truth.size()) {
        throw std::invalid_argument("click records and truth records differ in length");
    }
    SiftedSample sample;
    for (std::size_t k = 0; k < records.size(); k++) {
        if (records[k].pulse_index != truth[k].index) {
            throw std::invalid_argument("click record and truth record are not aligned by pulse index");
        }
        auto rng = RandomStream::for_pulse(seed, truth[k].index, StreamTag::sifting);
        sample.add(records[k].bob_basis, sift_pulse(records[k], truth[k].state, policy, rng));
    }
    return sample;
}

}  // namespace memqkd
