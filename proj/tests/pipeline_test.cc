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

#include <array>
#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace memqkd;
using memqkd::testing::binomial_se;
using memqkd::testing::kChiSquare3Dof99;

TEST(generate_pulse_train, ordered_cycle) {
    SourceConfig cfg;
    cfg.mode = SourceMode::ordered;
    cfg.n_pulses = 4;
    auto train = generate_pulse_train(cfg, 123);
    ASSERT_EQ(train.size(), 4u);
    const Polarization expected[] = {Polarization::H, Polarization::V, Polarization::D, Polarization::A};
    for (std::size_t k = 0; k < 4; k++) {
        ASSERT_EQ(train[k].index, k);
        ASSERT_EQ(train[k].state, expected[k]);
        ASSERT_EQ(train[k].emit_time_ns, 40000.0 * static_cast<double>(k));
    }
    // One full cycle spans 160 us.
    cfg.n_pulses = 9;
    train = generate_pulse_train(cfg, 0);
    ASSERT_EQ(train[4].state, Polarization::H);
    ASSERT_EQ(train[4].emit_time_ns - train[0].emit_time_ns, 160000.0);
    ASSERT_EQ(train[8].state, Polarization::H);
}

TEST(generate_pulse_train, empty) {
    SourceConfig cfg;
    cfg.n_pulses = 0;
    ASSERT_TRUE(generate_pulse_train(cfg, 1).empty());
    cfg.mode = SourceMode::ordered;
    ASSERT_TRUE(generate_pulse_train(cfg, 1).empty());
}

TEST(generate_pulse_train, random_is_uniform) {
    SourceConfig cfg;
    cfg.mode = SourceMode::random;
    cfg.n_pulses = 100000;
    auto train = generate_pulse_train(cfg, 2024);
    std::array<double, 4> counts{};
    for (const auto &p : train) {
        counts[static_cast<int>(p.state)]++;
    }
    const double expected = cfg.n_pulses / 4.0;
    double chi2 = 0.0;
    for (double c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    ASSERT_LT(chi2, kChiSquare3Dof99);
}

TEST(generate_pulse_train, random_depends_only_on_seed_and_index) {
    SourceConfig cfg;
    cfg.n_pulses = 64;
    auto train = generate_pulse_train(cfg, 77);
    for (const auto &p : train) {
        ASSERT_EQ(emit_pulse(cfg, 77, p.index), p);
    }
    auto other = generate_pulse_train(cfg, 78);
    ASSERT_NE(train, other);
}

TEST(sample_arriving_photons, zero_mean_gives_no_photons) {
    ChannelConfig ch;
    RandomStream rng(1);
    for (int k = 0; k < 1000; k++) {
        ASSERT_EQ(sample_arriving_photons(0.0, ch, rng).count, 0u);
    }
}

TEST(sample_arriving_photons, mean_at_memory_input) {
    ChannelConfig ch;
    ch.transmission = 0.59;
    ch.rel_fluctuation = 0.0;
    RandomStream rng(8);
    const int n = 1000000;
    double sum = 0.0;
    for (int k = 0; k < n; k++) {
        auto a = sample_arriving_photons(1.6 / 0.59, ch, rng);
        ASSERT_EQ(a.gain, 1.0);
        sum += static_cast<double>(a.count);
    }
    ASSERT_NEAR(sum / n, 1.6, 3.0 * std::sqrt(1.6 / n));
}

TEST(sample_arriving_photons, turbulence_fluctuation) {
    for (GainModel model : {GainModel::truncated_normal, GainModel::lognormal}) {
        ChannelConfig ch;
        ch.rel_fluctuation = 0.05;
        ch.gain_model = model;
        RandomStream rng(13);
        const int n = 100000;
        double sum = 0.0;
        double sum2 = 0.0;
        for (int k = 0; k < n; k++) {
            double mu = sample_arriving_photons(2.0, ch, rng).mu_effective;
            ASSERT_GE(mu, 0.0);
            sum += mu;
            sum2 += mu * mu;
        }
        double mean = sum / n;
        double rel_std = std::sqrt(sum2 / n - mean * mean) / mean;
        ASSERT_NEAR(mean, 2.0 * 0.59, 0.01);
        ASSERT_NEAR(rel_std, 0.05, 0.005);
    }
}

TEST(apply_memory, lossless_noise_free) {
    MemoryConfig mem;
    mem.retrieval_efficiency = 1.0;
    mem.leak_fraction = 0.0;
    mem.background_mean = 0.0;
    RandomStream rng(4);
    for (std::uint64_t n : {0u, 1u, 5u, 100u}) {
        auto out = apply_memory(n, Polarization::D, mem, rng);
        ASSERT_EQ(out.retrieved, n);
        ASSERT_EQ(out.leaked + out.lost + out.background, 0u);
        ASSERT_EQ(out.state, Polarization::D);
    }
}

TEST(apply_memory, no_retrieval) {
    MemoryConfig mem;
    mem.retrieval_efficiency = 0.0;
    mem.leak_fraction = 0.4;
    mem.background_mean = 0.0;
    RandomStream rng(4);
    for (int k = 0; k < 500; k++) {
        auto out = apply_memory(20, Polarization::H, mem, rng);
        ASSERT_EQ(out.retrieved, 0u);
        ASSERT_EQ(out.background, 0u);
        ASSERT_EQ(out.leaked + out.lost, 20u);
    }
}

TEST(apply_memory, conserves_photons) {
    RandomStream params(99);
    for (int trial = 0; trial < 200; trial++) {
        MemoryConfig mem;
        mem.retrieval_efficiency = params.uniform();
        mem.leak_fraction = (1.0 - mem.retrieval_efficiency) * params.uniform();
        mem.background_mean = 2.0 * params.uniform();
        auto count = params.uniform_below(50);
        auto state = kAllPolarizations[params.uniform_below(4)];
        auto rng = RandomStream::for_pulse(5, trial, StreamTag::memory);
        auto out = apply_memory(count, state, mem, rng);
        ASSERT_EQ(out.retrieved + out.leaked + out.lost, count);
        ASSERT_EQ(out.state, state);
    }
}

TEST(apply_memory, fractions_and_background) {
    MemoryConfig mem;
    mem.retrieval_efficiency = 0.1;
    mem.leak_fraction = 0.3;
    mem.background_mean = 0.05;
    mem.noise_suppression = 0.5;
    RandomStream rng(17);
    const int pulses = 100000;
    double retrieved = 0, leaked = 0, background = 0;
    for (int k = 0; k < pulses; k++) {
        auto out = apply_memory(10, Polarization::H, mem, rng);
        retrieved += out.retrieved;
        leaked += out.leaked;
        background += out.background;
    }
    const double photons = 10.0 * pulses;
    ASSERT_NEAR(retrieved / photons, 0.1, 4 * binomial_se(0.1, photons));
    ASSERT_NEAR(leaked / photons, 0.3, 4 * binomial_se(0.3, photons));
    ASSERT_NEAR(background / pulses, 0.025, 4 * std::sqrt(0.025 / pulses));
}

TEST(measure, matched_basis_single_photon) {
    MemoryOutput photons;
    photons.state = Polarization::H;
    photons.retrieved = 1;
    int z_trials = 0;
    for (std::uint64_t k = 0; k < 2000; k++) {
        auto rng = RandomStream::for_pulse(3, k, StreamTag::receiver);
        auto rec = measure(k, photons, rng);
        if (rec.bob_basis == Basis::Z) {
            z_trials++;
            ASSERT_EQ(rec.clicks[0], 1u);
            ASSERT_EQ(rec.clicks[1], 0u);
        }
    }
    ASSERT_GT(z_trials, 0);
}

TEST(measure, conjugate_basis_is_random) {
    MemoryOutput photons;
    photons.state = Polarization::H;
    photons.retrieved = 1;
    double x_trials = 0;
    double d_hits = 0;
    const int n = 40000;
    for (std::uint64_t k = 0; k < n; k++) {
        auto rng = RandomStream::for_pulse(3, k, StreamTag::receiver);
        auto rec = measure(k, photons, rng);
        if (rec.bob_basis == Basis::X) {
            x_trials++;
            d_hits += static_cast<double>(rec.clicks[0]);
            ASSERT_EQ(rec.roi_total(), 1u);
        }
    }
    ASSERT_NEAR(x_trials / n, 0.5, 3 * binomial_se(0.5, n));
    ASSERT_NEAR(d_hits / x_trials, 0.5, 3 * binomial_se(0.5, x_trials));
}

TEST(measure, background_splits_evenly) {
    MemoryOutput photons;
    photons.state = Polarization::V;
    photons.background = 50;
    double d0 = 0;
    double total = 0;
    for (std::uint64_t k = 0; k < 2000; k++) {
        auto rng = RandomStream::for_pulse(6, k, StreamTag::receiver);
        auto rec = measure(k, photons, rng);
        d0 += static_cast<double>(rec.clicks[0]);
        total += static_cast<double>(rec.roi_total());
        ASSERT_EQ(rec.background_clicks, 50u);
    }
    ASSERT_EQ(total, 100000.0);
    ASSERT_NEAR(d0 / total, 0.5, 3 * binomial_se(0.5, total));
}

TEST(sift_pulse, rules) {
    RandomStream rng(1);
    ClickRecord rec;
    rec.bob_basis = Basis::Z;

    rec.clicks = {0, 0};
    ASSERT_FALSE(sift_pulse(rec, Polarization::H, DoubleClickPolicy::random_bit, rng).sifted);

    rec.clicks = {2, 0};
    ASSERT_EQ(sift_pulse(rec, Polarization::H, DoubleClickPolicy::random_bit, rng), (SiftOutcome{true, false}));
    ASSERT_EQ(sift_pulse(rec, Polarization::V, DoubleClickPolicy::random_bit, rng), (SiftOutcome{true, true}));
    // Basis mismatch.
    ASSERT_FALSE(sift_pulse(rec, Polarization::D, DoubleClickPolicy::random_bit, rng).sifted);

    rec.clicks = {3, 1};
    ASSERT_EQ(sift_pulse(rec, Polarization::H, DoubleClickPolicy::discard, rng), (SiftOutcome{true, false}));

    rec.clicks = {1, 1};
    ASSERT_FALSE(sift_pulse(rec, Polarization::H, DoubleClickPolicy::discard, rng).sifted);
    int errors = 0;
    const int n = 20000;
    for (int k = 0; k < n; k++) {
        auto o = sift_pulse(rec, Polarization::H, DoubleClickPolicy::random_bit, rng);
        ASSERT_TRUE(o.sifted);
        errors += o.error;
    }
    ASSERT_NEAR(errors / double(n), 0.5, 4 * binomial_se(0.5, n));
}

TEST(sift_and_estimate, arithmetic) {
    std::vector<ClickRecord> records;
    std::vector<PulseRecord> truth;
    for (std::uint64_t k = 0; k < 10; k++) {
        ClickRecord rec;
        rec.pulse_index = k;
        rec.bob_basis = Basis::X;
        rec.clicks = k == 3 ? std::array<std::uint64_t, 2>{0, 1} : std::array<std::uint64_t, 2>{1, 0};
        records.push_back(rec);
        truth.push_back({k, 0.0, Polarization::D, 1.0});
    }
    auto s = sift_and_estimate(records, truth, DoubleClickPolicy::random_bit, 0);
    ASSERT_EQ(s.n_sifted_x, 10u);
    ASSERT_EQ(s.n_err_x, 1u);
    ASSERT_EQ(s.qber_x(), 0.1);
    ASSERT_EQ(s.n_sifted_z, 0u);
    ASSERT_TRUE(std::isnan(s.qber_z()));
}

TEST(sift_and_estimate, rejects_misaligned_input) {
    std::vector<ClickRecord> records(3);
    std::vector<PulseRecord> truth(2);
    ASSERT_THROW(sift_and_estimate(records, truth, DoubleClickPolicy::random_bit, 0), std::invalid_argument);
    truth.resize(3);
    records[1].pulse_index = 5;
    ASSERT_THROW(sift_and_estimate(records, truth, DoubleClickPolicy::random_bit, 0), std::invalid_argument);
}

TEST(sample, merge_and_errors_bounded) {
    SiftedSample a{10, 20, 1, 2};
    SiftedSample b{5, 5, 5, 0};
    a.merge(b);
    ASSERT_EQ(a, (SiftedSample{15, 25, 6, 2}));
    ASSERT_LE(a.n_err_z, a.n_sifted_z);
    ASSERT_LE(a.n_err_x, a.n_sifted_x);
}
