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

#include "memqkd/sim_config.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace memqkd {

namespace {

void require(bool ok, const char *field, const char *what) {
    if (!ok) {
        throw std::invalid_argument(std::string(field) + " " + what);
    }
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void SourceConfig::validate() const {
    require(std::isfinite(pulse_width_ns) && pulse_width_ns > 0.0, "source.pulse_width_ns", "must be positive");
    require(std::isfinite(pulse_period_ns) && pulse_period_ns > 0.0, "source.pulse_period_ns", "must be positive");
    require(pulse_width_ns < pulse_period_ns, "source.pulse_width_ns", "must be shorter than pulse_period_ns");
    require(std::isfinite(mu_alice) && mu_alice > 0.0, "source.mu_alice", "must be positive");
}

void ChannelConfig::validate() const {
    require(transmission > 0.0 && transmission <= 1.0, "channel.transmission", "must lie in (0, 1]");
    require(std::isfinite(rel_fluctuation) && rel_fluctuation >= 0.0, "channel.rel_fluctuation", "must be >= 0");
}

void MemoryConfig::validate() const {
    require(is_probability(retrieval_efficiency), "memory.retrieval_efficiency", "must lie in [0, 1]");
    require(is_probability(leak_fraction), "memory.leak_fraction", "must lie in [0, 1]");
    require(
        retrieval_efficiency + leak_fraction <= 1.0,
        "memory.leak_fraction",
        "plus retrieval_efficiency must not exceed 1");
    require(std::isfinite(background_mean) && background_mean >= 0.0, "memory.background_mean", "must be >= 0");
    require(std::isfinite(retrieval_delay_ns), "memory.retrieval_delay_ns", "must be finite");
    require(std::isfinite(roi_width_ns) && roi_width_ns > 0.0, "memory.roi_width_ns", "must be positive");
    require(is_probability(noise_suppression), "memory.noise_suppression", "must lie in [0, 1]");
}

void AnalysisConfig::validate(const MemoryConfig &memory) const {
    require(std::isfinite(bin_width_ns) && bin_width_ns > 0.0, "analysis.bin_width_ns", "must be positive");
    require(
        std::isfinite(record_start_ns) && std::isfinite(record_end_ns) && record_end_ns > record_start_ns,
        "analysis.record_end_ns",
        "must be after record_start_ns");
    require(
        memory.roi_start_ns() >= record_start_ns && memory.roi_end_ns() <= record_end_ns,
        "memory.retrieval_delay_ns",
        "puts the ROI outside the analysis record window");
    require(
        background_end_ns > background_start_ns, "analysis.background_end_ns", "must be after background_start_ns");
    require(
        background_start_ns >= record_start_ns && background_end_ns <= record_end_ns,
        "analysis.background_start_ns",
        "puts the background region outside the record window");
    require(
        background_end_ns <= memory.roi_start_ns() || background_start_ns >= memory.roi_end_ns(),
        "analysis.background_start_ns",
        "makes the background region overlap the ROI");
}

void RunConfig::validate() const {
    source.validate();
    channel.validate();
    memory.validate();
    analysis.validate(memory);
}

double RunConfig::expected_sbr() const {
    double background = memory.effective_background();
    double signal = memory.retrieval_efficiency * memory_input_mean();
    if (background == 0.0) {
        return signal > 0.0 ? INFINITY : NAN;
    }
    return signal / background;
}

const char *to_string(SourceMode mode) noexcept { return mode == SourceMode::ordered ? "ordered" : "random"; }

const char *to_string(GainModel model) noexcept {
    return model == GainModel::truncated_normal ? "normal" : "lognormal";
}

const char *to_string(DoubleClickPolicy policy) noexcept {
    return policy == DoubleClickPolicy::random_bit ? "random" : "discard";
}

}  // namespace memqkd
