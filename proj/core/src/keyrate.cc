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

#include "memqkd/keyrate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memqkd {

namespace {

void require_increasing(std::span<const double> axis, const char *name) {
    if (axis.empty()) {
        throw std::invalid_argument(std::string(name) + " axis is empty");
    }
    for (std::size_t k = 1; k < axis.size(); k++) {
        if (!(axis[k] > axis[k - 1])) {
            throw std::invalid_argument(std::string(name) + " axis is not strictly increasing");
        }
    }
}

}  // namespace

SbrEstimate SbrEstimate::from_counts(double eta, double q) {
    if (!(eta >= 0.0) || !(q >= 0.0)) {
        throw std::invalid_argument("SBR counts must be nonnegative");
    }
    if (q == 0.0) {
        double sbr = eta == 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
        return {eta, q, sbr};
    }
    return {eta, q, eta / q};
}

void KeyRateInput::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("mu must be positive and finite");
    }
    if (!(q_x >= 0.0 && q_x <= 0.5)) {
        throw std::invalid_argument("q_x must lie in [0, 0.5]");
    }
    if (!(q_z >= 0.0 && q_z <= 0.5)) {
        throw std::invalid_argument("q_z must lie in [0, 0.5]");
    }
    if (!(f >= 1.0) || !std::isfinite(f)) {
        throw std::invalid_argument("f must be >= 1");
    }
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("binary_entropy argument outside [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    // Evaluate on the smaller half so H(x) == H(1 - x) holds bit-for-bit.
    double p = std::min(x, 1.0 - x);
    double r = 1.0 - p;
    return -(p * std::log2(p) + r * std::log2(r));
}

double secret_key_rate(const KeyRateInput &in) {
    in.validate();
    return in.mu * (std::exp(-in.mu) * (1.0 - binary_entropy(in.q_x)) - binary_entropy(in.q_z) * in.f);
}

std::optional<double> positive_rate_boundary(double mu, double f, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    auto rate_at = [&](double q) { return secret_key_rate({mu, q, q, f}); };
    if (rate_at(0.0) <= 0.0) {
        return std::nullopt;
    }
    // R(mu, 0.5, 0.5, f) = -mu f < 0, so [0, 0.5] brackets the root.
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (rate_at(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

KeyRateMap key_rate_map(std::span<const double> mu_axis, std::span<const double> qber_axis, double f, double tol) {
    require_increasing(mu_axis, "mu");
    require_increasing(qber_axis, "qber");

    KeyRateMap map;
    map.mu_axis.assign(mu_axis.begin(), mu_axis.end());
    map.qber_axis.assign(qber_axis.begin(), qber_axis.end());
    map.rates.reserve(mu_axis.size() * qber_axis.size());
    for (double mu : mu_axis) {
        for (double q : qber_axis) {
            map.rates.push_back(secret_key_rate({mu, q, q, f}));
        }
        if (auto star = positive_rate_boundary(mu, f, tol)) {
            map.boundary.push_back({mu, *star});
        }
    }
    return map;
}

std::vector<double> linear_axis(double lo, double hi, std::size_t count) {
    if (count == 0) {
        throw std::invalid_argument("axis resolution must be at least 1");
    }
    if (hi < lo) {
        throw std::invalid_argument("inverted range");
    }
    if (count > 1 && hi == lo) {
        throw std::invalid_argument("empty range");
    }
    std::vector<double> axis(count);
    if (count == 1) {
        axis[0] = lo;
        return axis;
    }
    double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; k++) {
        axis[k] = lo + step * static_cast<double>(k);
    }
    axis.back() = hi;
    return axis;
}

double fidelity_from_sbr(double sbr) {
    if (!(sbr > 0.5)) {
        throw std::domain_error("formula out of validity range: fidelity estimate needs sbr > 0.5");
    }
    return 1.0 - 0.5 / sbr;
}

double qber_oracle_from_sbr(double sbr) {
    if (!(sbr >= 0.0)) {
        throw std::invalid_argument("sbr must be nonnegative");
    }
    return 0.5 / (1.0 + sbr);
}

bool classical_bound_check(double fidelity) noexcept { return fidelity > kClassicalFidelityThreshold; }

}  // namespace memqkd
