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
#include <optional>
#include <string_view>

namespace memqkd {

/// The four BB84 polarization states. D and A are the balanced
/// superpositions (H + V)/sqrt(2) and (H - V)/sqrt(2).
enum class Polarization : unsigned char { H = 0, V = 1, D = 2, A = 3 };

/// Measurement bases: Z = {H, V}, X = {D, A}.
enum class Basis : unsigned char { Z = 0, X = 1 };

inline constexpr std::array<Polarization, 4> kAllPolarizations = {
    Polarization::H, Polarization::V, Polarization::D, Polarization::A};

constexpr Basis basis_of(Polarization p) noexcept {
    return (p == Polarization::H || p == Polarization::V) ? Basis::Z : Basis::X;
}

/// Key-bit convention: H and D encode 0, V and A encode 1.
constexpr int bit_of(Polarization p) noexcept {
    return (p == Polarization::V || p == Polarization::A) ? 1 : 0;
}

/// The detector of `basis` that reports `bit`.
constexpr Polarization detector_for(Basis basis, int bit) noexcept {
    if (basis == Basis::Z) {
        return bit == 0 ? Polarization::H : Polarization::V;
    }
    return bit == 0 ? Polarization::D : Polarization::A;
}

/// Probability that a photon prepared in `prepared` clicks detector `detector`
/// when measured in `basis`. Throws std::invalid_argument if `detector` is not
/// one of the two detectors of `basis`.
double detection_probability(Polarization prepared, Basis basis, Polarization detector);

char to_char(Polarization p) noexcept;
char to_char(Basis b) noexcept;
std::optional<Polarization> polarization_from_char(char c) noexcept;
std::optional<Basis> basis_from_char(char c) noexcept;

}  // namespace memqkd
