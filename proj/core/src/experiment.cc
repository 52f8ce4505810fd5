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

#include "memqkd/experiment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace memqkd {

namespace {

constexpr double kLabMemoryInput = 1.6;
constexpr double kExperiment3Sbr = 3.2017;
constexpr double kTransmission = 0.59;

// Background of the lab memory per ROI, fixed by the single-photon-level run.
const double kLabBackground = kCalibratedRetrievalEfficiency * kLabMemoryInput / kExperiment3Sbr;

RunConfig base_config(SourceMode mode, double mu_in, double background, std::uint64_t pulses) {
    RunConfig cfg;
    cfg.source.mode = mode;
    cfg.source.n_pulses = pulses;
    cfg.channel.transmission = kTransmission;
    cfg.memory.retrieval_efficiency = kCalibratedRetrievalEfficiency;
    cfg.memory.background_mean = background;
    return with_memory_input_mean(cfg, mu_in);
}

struct ShardOutput {
    SiftedSample sifted;
    PhotonTally tally;
    Histogram histogram;
};

double uniform_in(RandomStream &rng, double lo, double hi) {
    double t = lo + (hi - lo) * rng.uniform();
    return t < hi ? t : std::nextafter(hi, lo);
}

void record_arrival_times(
    const RunConfig &cfg, const MemoryOutput &photons, std::uint64_t index, Histogram &histogram) {
    auto rng = RandomStream::for_pulse(cfg.seed, index, StreamTag::timing);
    const MemoryConfig &mem = cfg.memory;
    const double roi_lo = mem.roi_start_ns();
    const double roi_hi = mem.roi_end_ns();

    for (std::uint64_t k = 0; k < photons.leaked; k++) {
        histogram.add(uniform_in(rng, 0.0, cfg.source.pulse_width_ns));
    }
    for (std::uint64_t k = 0; k < photons.retrieved + photons.background; k++) {
        histogram.add(uniform_in(rng, roi_lo, roi_hi));
    }

    // Background outside the ROI at the same rate, for histogram estimates.
    const double before = roi_lo - cfg.analysis.record_start_ns;
    const double after = cfg.analysis.record_end_ns - roi_hi;
    const double outside = before + after;
    if (outside <= 0.0) {
        return;
    }
    const std::uint64_t extra = rng.poisson(mem.effective_background() * outside / mem.roi_width_ns);
    for (std::uint64_t k = 0; k < extra; k++) {
        double offset = outside * rng.uniform();
        double t = offset < before ? cfg.analysis.record_start_ns + offset : roi_hi + (offset - before);
        histogram.add(t);
    }
}

void simulate_range(const RunConfig &cfg, std::uint64_t begin, std::uint64_t end, ExperimentResult &result,
                    ShardOutput &shard) {
    for (std::uint64_t i = begin; i < end; i++) {
        const EmittedPulse pulse = emit_pulse(cfg.source, cfg.seed, i);

        auto channel_rng = RandomStream::for_pulse(cfg.seed, i, StreamTag::channel);
        const ArrivingPhotons arriving = sample_arriving_photons(cfg.source.mu_alice, cfg.channel, channel_rng);

        auto memory_rng = RandomStream::for_pulse(cfg.seed, i, StreamTag::memory);
        const MemoryOutput photons = apply_memory(arriving.count, pulse.state, cfg.memory, memory_rng);

        auto receiver_rng = RandomStream::for_pulse(cfg.seed, i, StreamTag::receiver);
        const ClickRecord clicks = measure(i, photons, receiver_rng);

        auto sift_rng = RandomStream::for_pulse(cfg.seed, i, StreamTag::sifting);
        const SiftOutcome outcome = sift_pulse(clicks, pulse.state, cfg.analysis.double_click, sift_rng);

        record_arrival_times(cfg, photons, i, shard.histogram);

        result.pulses[i] = {pulse.index, pulse.emit_time_ns, pulse.state, arriving.mu_effective};
        result.clicks[i] = clicks;
        result.outcomes[i] = outcome;
        shard.sifted.add(clicks.bob_basis, outcome);
        shard.tally.merge({arriving.count, photons.retrieved, photons.leaked, photons.lost, photons.background});
    }
}

}  // namespace

const char *preset_name(Preset preset) noexcept {
    switch (preset) {
        case Preset::experiment1:
            return "experiment1";
        case Preset::experiment2:
            return "experiment2";
        case Preset::experiment3:
            return "experiment3";
        case Preset::experiment4:
            return "experiment4";
        case Preset::experiment5:
            return "experiment5";
    }
    return "unknown";
}

std::optional<Preset> preset_from_name(std::string_view name) noexcept {
    for (Preset p : kAllPresets) {
        if (name == preset_name(p)) {
            return p;
        }
    }
    return std::nullopt;
}

RunConfig preset_config(Preset preset) {
    const double r = kCalibratedRetrievalEfficiency;
    switch (preset) {
        case Preset::experiment1:
            return base_config(SourceMode::ordered, kLabMemoryInput, calibrate_background(r, kLabMemoryInput, 6.25),
                               100000);
        case Preset::experiment2:
            return base_config(SourceMode::random, 100.0, kLabBackground, 10000);
        case Preset::experiment3:
            return base_config(SourceMode::random, kLabMemoryInput, kLabBackground, 100000);
        case Preset::experiment4: {
            RunConfig cfg = base_config(SourceMode::random, 1.3, kLabBackground, 100000);
            cfg.memory.noise_suppression = calibrate_background(r, 1.3, 26.0) / kLabBackground;
            return cfg;
        }
        case Preset::experiment5:
            // Single-rail storage; the phenomenological memory has no per-rail
            // parameters, so only the SBR target distinguishes it.
            return base_config(SourceMode::random, 2.0, calibrate_background(r, 2.0, 7.2), 100000);
    }
    throw std::invalid_argument("unknown preset");
}

RunConfig with_memory_input_mean(RunConfig cfg, double mu_in) {
    if (!(mu_in > 0.0)) {
        throw std::invalid_argument("memory input mean must be positive");
    }
    cfg.source.mu_alice = mu_in / cfg.channel.transmission;
    return cfg;
}

double calibrate_background(double retrieval_efficiency, double mu_in, double target_sbr) {
    if (!(target_sbr > 0.0) || !(mu_in > 0.0)) {
        throw std::invalid_argument("target SBR and mean photon number must be positive");
    }
    if (!(retrieval_efficiency >= 0.0 && retrieval_efficiency <= 1.0)) {
        throw std::invalid_argument("retrieval efficiency must lie in [0, 1]");
    }
    return retrieval_efficiency * mu_in / target_sbr;
}

void PhotonTally::merge(const PhotonTally &other) noexcept {
    arrived += other.arrived;
    retrieved += other.retrieved;
    leaked += other.leaked;
    lost += other.lost;
    roi_background += other.roi_background;
}

ExperimentResult run_experiment(const RunConfig &cfg, unsigned workers) {
    cfg.validate();
    const std::uint64_t n = cfg.source.n_pulses;
    const TimeWindow record{cfg.analysis.record_start_ns, cfg.analysis.record_end_ns};

    ExperimentResult result{
        .config = cfg,
        .pulses = std::vector<PulseRecord>(n),
        .clicks = std::vector<ClickRecord>(n),
        .outcomes = std::vector<SiftOutcome>(n),
        .sifted = {},
        .tally = {},
        .mean_mu_in = 0.0,
        .sbr = {},
        .histogram = Histogram(cfg.analysis.bin_width_ns, record),
    };

    workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(n, 1)));
    std::vector<ShardOutput> shards(workers, ShardOutput{{}, {}, Histogram(cfg.analysis.bin_width_ns, record)});
    const std::uint64_t chunk = (n + workers - 1) / workers;
    auto shard_range = [&](unsigned w) {
        std::uint64_t begin = std::min<std::uint64_t>(n, chunk * w);
        std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
        simulate_range(cfg, begin, end, result, shards[w]);
    };
    if (workers == 1) {
        shard_range(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; w++) {
            threads.emplace_back(shard_range, w);
        }
    }

    for (const ShardOutput &shard : shards) {
        result.sifted.merge(shard.sifted);
        result.tally.merge(shard.tally);
        result.histogram.merge(shard.histogram);
    }

    // Summed in index order so the floating-point result is worker independent.
    double mu_sum = 0.0;
    for (const PulseRecord &p : result.pulses) {
        mu_sum += p.mu_effective;
    }
    if (n > 0) {
        const auto pulses = static_cast<double>(n);
        result.mean_mu_in = mu_sum / pulses;
        result.sbr = SbrEstimate::from_counts(
            static_cast<double>(result.tally.retrieved) / pulses,
            static_cast<double>(result.tally.roi_background) / pulses);
    } else {
        result.sbr = SbrEstimate::from_counts(0.0, 0.0);
    }
    return result;
}

}  // namespace memqkd
