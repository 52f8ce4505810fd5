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

#include "memqkd/rng.h"

#include <cmath>
#include <numbers>

namespace memqkd {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::uint64_t poisson_small(RandomStream &rng, double mean) noexcept {
    double limit = std::exp(-mean);
    double product = rng.uniform();
    std::uint64_t k = 0;
    while (product > limit) {
        k++;
        product *= rng.uniform();
    }
    return k;
}

// Hormann, "The transformed rejection method for generating Poisson random
// variables" (PTRS). Valid for mean >= 10.
std::uint64_t poisson_ptrs(RandomStream &rng, double mean) noexcept {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t &state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) noexcept {
    std::uint64_t state = seed;
    for (auto &word : s_) {
        word = splitmix64(state);
    }
}

RandomStream RandomStream::for_pulse(std::uint64_t seed, std::uint64_t pulse_index, StreamTag tag) noexcept {
    std::uint64_t state = seed;
    std::uint64_t key = splitmix64(state);
    state = key ^ pulse_index;
    key = splitmix64(state);
    state = key ^ static_cast<std::uint64_t>(tag);
    return RandomStream(splitmix64(state));
}

std::uint64_t RandomStream::next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t RandomStream::uniform_below(std::uint64_t n) noexcept {
    // Rejection on the top of the range removes modulo bias.
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        std::uint64_t r = next_u64();
        if (r >= threshold) {
            return r % n;
        }
    }
}

double RandomStream::standard_normal() noexcept {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::poisson(double mean) noexcept {
    if (!(mean > 0.0)) {
        return 0;
    }
    if (mean < 10.0) {
        return poisson_small(*this, mean);
    }
    return poisson_ptrs(*this, mean);
}

}  // namespace memqkd
