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

#include "memqkd/qubit.h"

#include <stdexcept>
#include <string>

namespace memqkd {

double detection_probability(Polarization prepared, Basis basis, Polarization detector) {
    if (basis_of(detector) != basis) {
        throw std::invalid_argument(
            std::string("detector ") + to_char(detector) + " is not in basis " + to_char(basis));
    }
    if (basis_of(prepared) != basis) {
        return 0.5;
    }
    return prepared == detector ? 1.0 : 0.0;
}

char to_char(Polarization p) noexcept {
    switch (p) {
        case Polarization::H:
            return 'H';
        case Polarization::V:
            return 'V';
        case Polarization::D:
            return 'D';
        case Polarization::A:
            return 'A';
    }
    return '?';
}

char to_char(Basis b) noexcept { return b == Basis::Z ? 'Z' : 'X'; }

std::optional<Polarization> polarization_from_char(char c) noexcept {
    switch (c) {
        case 'H':
            return Polarization::H;
        case 'V':
            return Polarization::V;
        case 'D':
            return Polarization::D;
        case 'A':
            return Polarization::A;
        default:
            return std::nullopt;
    }
}

std::optional<Basis> basis_from_char(char c) noexcept {
    if (c == 'Z') {
        return Basis::Z;
    }
    if (c == 'X') {
        return Basis::X;
    }
    return std::nullopt;
}

}  // namespace memqkd
