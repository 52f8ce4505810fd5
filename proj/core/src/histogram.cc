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

#include "memqkd/histogram.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace memqkd {

Histogram::Histogram(double bin_width_ns, TimeWindow window) : bin_width_(bin_width_ns), window_(window) {
    if (!(bin_width_ns > 0.0) || !std::isfinite(bin_width_ns)) {
        throw std::invalid_argument("histogram bin width must be positive");
    }
    if (!(window.end_ns > window.start_ns)) {
        throw std::invalid_argument("histogram window is empty");
    }
    auto bins = static_cast<std::size_t>(std::ceil(window.width() / bin_width_ns));
    counts_.assign(std::max<std::size_t>(bins, 1), 0);
}

double Histogram::bin_end(std::size_t k) const noexcept {
    return std::min(window_.end_ns, bin_start(k) + bin_width_);
}

void Histogram::add(double t_ns) noexcept {
    if (!window_.contains(t_ns)) {
        dropped_++;
        return;
    }
    auto k = static_cast<std::size_t>(std::floor((t_ns - window_.start_ns) / bin_width_));
    counts_[std::min(k, counts_.size() - 1)]++;
}

void Histogram::merge(const Histogram &other) {
    if (other.bin_width_ != bin_width_ || other.window_.start_ns != window_.start_ns ||
        other.window_.end_ns != window_.end_ns) {
        throw std::invalid_argument("cannot merge histograms with different binning");
    }
    for (std::size_t k = 0; k < counts_.size(); k++) {
        counts_[k] += other.counts_[k];
    }
    dropped_ += other.dropped_;
}

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

Histogram bin_clicks(std::span<const double> timestamps_ns, double bin_width_ns, TimeWindow window) {
    Histogram h(bin_width_ns, window);
    for (double t : timestamps_ns) {
        h.add(t);
    }
    return h;
}

std::uint64_t roi_integrate(const Histogram &h, double center_ns, double width_ns) {
    if (!(width_ns >= 0.0)) {
        throw std::invalid_argument("ROI width must be nonnegative");
    }
    const double lo = center_ns - 0.5 * width_ns;
    const double hi = center_ns + 0.5 * width_ns;
    if (lo < h.window().start_ns || hi > h.window().end_ns) {
        throw std::out_of_range("ROI lies outside the histogram window");
    }
    std::uint64_t whole = 0;
    double partial = 0.0;
    auto counts = h.counts();
    for (std::size_t k = 0; k < h.bin_count(); k++) {
        const double b0 = h.bin_start(k);
        const double b1 = h.bin_end(k);
        if (b1 <= lo || b0 >= hi) {
            continue;
        }
        if (b0 >= lo && b1 <= hi) {
            whole += counts[k];
        } else {
            double overlap = std::min(b1, hi) - std::max(b0, lo);
            partial += static_cast<double>(counts[k]) * overlap / (b1 - b0);
        }
    }
    return whole + static_cast<std::uint64_t>(std::floor(partial + 0.5));
}

SbrEstimate sbr_from_histogram(
    const Histogram &h, double signal_center_ns, double roi_width_ns, TimeWindow background, SignalEstimate mode) {
    if (!(roi_width_ns > 0.0) || !(background.width() > 0.0)) {
        throw std::invalid_argument("signal and background regions must have positive width");
    }
    const double roi_lo = signal_center_ns - 0.5 * roi_width_ns;
    const double roi_hi = signal_center_ns + 0.5 * roi_width_ns;
    if (background.start_ns < roi_hi && roi_lo < background.end_ns) {
        throw std::invalid_argument("signal and background regions overlap");
    }
    const auto peak = static_cast<double>(roi_integrate(h, signal_center_ns, roi_width_ns));
    const auto bg_counts = static_cast<double>(
        roi_integrate(h, 0.5 * (background.start_ns + background.end_ns), background.width()));
    const double q = bg_counts * roi_width_ns / background.width();
    double eta = peak;
    if (mode == SignalEstimate::background_subtracted) {
        eta = std::max(0.0, peak - q);
    }
    return SbrEstimate::from_counts(eta, q);
}

}  // namespace memqkd
