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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "memqkd/rng.h"

using namespace memqkd;

namespace {

std::vector<double> uniform_times(RandomStream &rng, std::size_t n, double lo, double hi) {
    std::vector<double> t(n);
    for (auto &x : t) {
        x = lo + (hi - lo) * rng.uniform();
    }
    return t;
}

}  // namespace

TEST(bin_clicks, empty_and_boundaries) {
    std::vector<double> none;
    Histogram h = bin_clicks(none, 10.0, {0.0, 2000.0});
    ASSERT_EQ(h.bin_count(), 200u);
    ASSERT_EQ(h.total(), 0u);

    std::vector<double> at_start{0.0};
    h = bin_clicks(at_start, 10.0, {0.0, 2000.0});
    ASSERT_EQ(h.counts()[0], 1u);

    std::vector<double> edges{-0.1, 1999.999, 2000.0, 10.0};
    h = bin_clicks(edges, 10.0, {0.0, 2000.0});
    ASSERT_EQ(h.total(), 2u);
    ASSERT_EQ(h.dropped(), 2u);
    ASSERT_EQ(h.counts()[1], 1u);
    ASSERT_EQ(h.counts()[199], 1u);
}

TEST(bin_clicks, bin_count_rounds_up) {
    Histogram h(30.0, {0.0, 100.0});
    ASSERT_EQ(h.bin_count(), 4u);
    ASSERT_EQ(h.bin_end(3), 100.0);
    h.add(99.0);
    ASSERT_EQ(h.counts()[3], 1u);
}

TEST(bin_clicks, rejects_bad_binning) {
    std::vector<double> none;
    ASSERT_THROW(bin_clicks(none, 0.0, {0.0, 1.0}), std::invalid_argument);
    ASSERT_THROW(bin_clicks(none, -1.0, {0.0, 1.0}), std::invalid_argument);
    ASSERT_THROW(bin_clicks(none, 1.0, {1.0, 1.0}), std::invalid_argument);
}

TEST(bin_clicks, conserves_in_window_counts) {
    RandomStream rng(12);
    auto t = uniform_times(rng, 5000, -100.0, 2100.0);
    std::size_t inside = 0;
    for (double x : t) {
        inside += (x >= 0.0 && x < 2000.0);
    }
    Histogram h = bin_clicks(t, 10.0, {0.0, 2000.0});
    ASSERT_EQ(h.total(), inside);
    ASSERT_EQ(h.total() + h.dropped(), t.size());
}

TEST(histogram, sharded_merge_equals_single_pass) {
    RandomStream rng(31);
    auto t = uniform_times(rng, 10000, 0.0, 2000.0);
    Histogram whole = bin_clicks(t, 10.0, {0.0, 2000.0});
    Histogram merged(10.0, {0.0, 2000.0});
    for (std::size_t start = 0; start < t.size(); start += 777) {
        std::size_t end = std::min(t.size(), start + 777);
        merged.merge(bin_clicks(std::span<const double>(t).subspan(start, end - start), 10.0, {0.0, 2000.0}));
    }
    ASSERT_EQ(merged, whole);

    Histogram other(20.0, {0.0, 2000.0});
    ASSERT_THROW(merged.merge(other), std::invalid_argument);
}

TEST(roi_integrate, whole_window_and_empty_overlap) {
    RandomStream rng(2);
    auto t = uniform_times(rng, 1000, 0.0, 2000.0);
    Histogram h = bin_clicks(t, 10.0, {0.0, 2000.0});
    ASSERT_EQ(roi_integrate(h, 1000.0, 2000.0), 1000u);

    std::vector<double> early(50, 5.0);
    Histogram e = bin_clicks(early, 10.0, {0.0, 2000.0});
    ASSERT_EQ(roi_integrate(e, 1000.0, 100.0), 0u);
    ASSERT_EQ(roi_integrate(e, 1000.0, 0.0), 0u);
}

TEST(roi_integrate, prorates_partial_bins) {
    std::vector<double> t(10, 15.0);  // all in bin [10, 20)
    Histogram h = bin_clicks(t, 10.0, {0.0, 100.0});
    ASSERT_EQ(roi_integrate(h, 15.0, 10.0), 10u);
    ASSERT_EQ(roi_integrate(h, 20.0, 10.0), 5u);   // half of bin 1
    ASSERT_EQ(roi_integrate(h, 18.5, 1.0), 1u);    // 10 * 0.1
    ASSERT_EQ(roi_integrate(h, 19.75, 0.5), 1u);   // 10 * 0.05 = 0.5 rounds up
    ASSERT_EQ(roi_integrate(h, 19.8, 0.4), 0u);    // 0.4 rounds down
}

TEST(roi_integrate, rejects_region_outside_window) {
    Histogram h(10.0, {0.0, 100.0});
    ASSERT_THROW(roi_integrate(h, 0.0, 10.0), std::out_of_range);
    ASSERT_THROW(roi_integrate(h, 99.0, 10.0), std::out_of_range);
}

TEST(roi_integrate, additive_over_disjoint_aligned_regions) {
    RandomStream rng(8);
    auto t = uniform_times(rng, 20000, 0.0, 2000.0);
    Histogram h = bin_clicks(t, 10.0, {0.0, 2000.0});
    for (int trial = 0; trial < 100; trial++) {
        double a = 10.0 * static_cast<double>(rng.uniform_below(150));
        double b = a + 10.0 * static_cast<double>(1 + rng.uniform_below(20));
        double c = b + 10.0 * static_cast<double>(1 + rng.uniform_below(20));
        ASSERT_EQ(
            roi_integrate(h, 0.5 * (a + c), c - a),
            roi_integrate(h, 0.5 * (a + b), b - a) + roi_integrate(h, 0.5 * (b + c), c - b));
    }
}

TEST(sbr_from_histogram, flat_background) {
    RandomStream rng(44);
    auto t = uniform_times(rng, 200000, 0.0, 2000.0);
    Histogram h = bin_clicks(t, 10.0, {0.0, 2000.0});
    auto raw = sbr_from_histogram(h, 1000.0, 100.0, {1100.0, 2000.0}, SignalEstimate::raw_peak);
    // ROI ~10000 counts, background ~90000 counts: sigma of the ratio ~0.0105.
    ASSERT_NEAR(raw.sbr, 1.0, 0.035);
    auto sub = sbr_from_histogram(h, 1000.0, 100.0, {1100.0, 2000.0});
    ASSERT_NEAR(sub.sbr, 0.0, 0.035);
    ASSERT_GE(sub.sbr, 0.0);
}

TEST(sbr_from_histogram, recovers_known_ratio) {
    // Signal s and background b per ROI, repeated over pulses.
    for (double true_sbr : {0.5, 3.2, 26.0, 100.0}) {
        const double background = 0.05;
        const double signal = true_sbr * background;
        const int pulses = 200000;
        RandomStream rng(static_cast<std::uint64_t>(true_sbr * 10));
        Histogram h(10.0, {0.0, 2000.0});
        for (int k = 0; k < pulses; k++) {
            for (auto n = rng.poisson(signal); n > 0; n--) {
                h.add(950.0 + 100.0 * rng.uniform());
            }
            for (auto n = rng.poisson(background * 20.0); n > 0; n--) {
                h.add(2000.0 * rng.uniform());
            }
        }
        ASSERT_GE(h.total(), 10000u);
        auto est = sbr_from_histogram(h, 1000.0, 100.0, {1100.0, 2000.0});
        // Delta method on sbr = P / (r B) - 1 with P, B independent Poisson.
        const double P = pulses * (signal + background);
        const double B = pulses * background * 9.0;
        const double r = 1.0 / 9.0;
        const double var_ratio = P / (r * B * r * B) + P * P / (r * r * B * B * B);
        ASSERT_NEAR(est.sbr, true_sbr, 3.0 * std::sqrt(var_ratio)) << true_sbr;
    }
}

TEST(sbr_from_histogram, zero_background_is_infinite) {
    std::vector<double> t(100, 1000.0);
    Histogram h = bin_clicks(t, 10.0, {0.0, 2000.0});
    auto est = sbr_from_histogram(h, 1000.0, 100.0, {1100.0, 2000.0});
    ASSERT_TRUE(est.is_infinite());
    ASSERT_EQ(est.eta, 100.0);
}

TEST(sbr_from_histogram, rejects_overlapping_regions) {
    Histogram h(10.0, {0.0, 2000.0});
    ASSERT_THROW(sbr_from_histogram(h, 1000.0, 100.0, {1000.0, 1500.0}), std::invalid_argument);
    ASSERT_THROW(sbr_from_histogram(h, 1000.0, 100.0, {1500.0, 1500.0}), std::invalid_argument);
    ASSERT_THROW(sbr_from_histogram(h, 1000.0, 100.0, {1500.0, 2500.0}), std::out_of_range);
}
