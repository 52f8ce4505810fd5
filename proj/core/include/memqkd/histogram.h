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
#include <span>
#include <vector>

#include "memqkd/keyrate.h"

namespace memqkd {

/// Half-open time window [start_ns, end_ns).
struct TimeWindow {
    double start_ns = 0.0;
    double end_ns = 0.0;

    double width() const noexcept { return end_ns - start_ns; }
    bool contains(double t) const noexcept { return t >= start_ns && t < end_ns; }

    bool operator==(const TimeWindow &) const = default;
};

/// Time-of-arrival histogram over one record window. Bin k covers
/// [start + k * bin_width, start + (k + 1) * bin_width); the last bin is
/// clipped to the window end.
class Histogram {
   public:
    Histogram(double bin_width_ns, TimeWindow window);

    void add(double t_ns) noexcept;
    /// Throws std::invalid_argument when binning differs.
    void merge(const Histogram &other);

    double bin_width() const noexcept { return bin_width_; }
    const TimeWindow &window() const noexcept { return window_; }
    std::size_t bin_count() const noexcept { return counts_.size(); }
    double bin_start(std::size_t k) const noexcept { return window_.start_ns + bin_width_ * static_cast<double>(k); }
    double bin_end(std::size_t k) const noexcept;
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept;
    /// Timestamps rejected for falling outside the window.
    std::uint64_t dropped() const noexcept { return dropped_; }

    bool operator==(const Histogram &) const = default;

   private:
    double bin_width_;
    TimeWindow window_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t dropped_ = 0;
};

/// Throws std::invalid_argument for nonpositive bin width or an empty window.
Histogram bin_clicks(std::span<const double> timestamps_ns, double bin_width_ns, TimeWindow window);

/// Counts in [center - width/2, center + width/2]. Bins partially covered
/// contribute in proportion to their overlap; the sum is rounded half-up.
/// Throws std::out_of_range when the region leaves the histogram window.
std::uint64_t roi_integrate(const Histogram &h, double center_ns, double width_ns);

enum class SignalEstimate {
    /// eta = peak ROI counts minus the rescaled background.
    background_subtracted,
    /// eta = peak ROI counts as measured, background included.
    raw_peak,
};

/// SBR from a histogram: ROI of `roi_width_ns` at `signal_center_ns` against
/// the mean background in `background`, rescaled linearly to the ROI width.
/// Zero background gives an infinite estimate.
SbrEstimate sbr_from_histogram(
    const Histogram &h,
    double signal_center_ns,
    double roi_width_ns,
    TimeWindow background,
    SignalEstimate mode = SignalEstimate::background_subtracted);

}  // namespace memqkd
