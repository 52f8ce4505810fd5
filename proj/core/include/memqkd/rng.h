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
#include <cstdint>

namespace memqkd {

/// Purpose tags that keep the random streams of one pulse independent.
enum class StreamTag : std::uint64_t {
    source = 1,
    channel = 2,
    memory = 3,
    receiver = 4,
    sifting = 5,
    timing = 6,
};

std::uint64_t splitmix64(std::uint64_t &state) noexcept;

/// xoshiro256** generator with explicit, platform-independent sampling
/// routines. Results depend only on the seed, never on the standard
/// library's distribution implementations.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) noexcept;

    /// Counter-derived stream for one (seed, pulse, purpose) triple.
    static RandomStream for_pulse(std::uint64_t seed, std::uint64_t pulse_index, StreamTag tag) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n) noexcept;

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Standard normal via Box-Muller (no cached second variate, so each call
    /// consumes exactly two uniforms).
    double standard_normal() noexcept;

    /// Poisson variate. Multiplication method below mean 10, PTRS transformed
    /// rejection above.
    std::uint64_t poisson(double mean) noexcept;

   private:
    std::array<std::uint64_t, 4> s_;
};

}  // namespace memqkd
