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

#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace memqkd {

/// Error-correction inefficiency used for the key-rate map by default.
inline constexpr double kDefaultErrorCorrectionInefficiency = 1.05;

/// Fidelity that storage must exceed to beat a measure-and-resend strategy.
inline constexpr double kClassicalFidelityThreshold = 0.85;

inline constexpr double kDefaultBoundaryTolerance = 1e-6;

/// Signal-to-background ratio in one region of interest. `eta` is the
/// expected retrieved signal count, `q` the expected background count.
/// A zero background with nonzero signal is represented by sbr = +inf; with
/// zero signal as well, sbr is NaN (undefined).
struct SbrEstimate {
    double eta = 0.0;
    double q = 0.0;
    double sbr = 0.0;

    /// Throws std::invalid_argument on negative inputs.
    static SbrEstimate from_counts(double eta, double q);

    bool is_infinite() const noexcept { return sbr == std::numeric_limits<double>::infinity(); }
};

struct KeyRateInput {
    double mu = 1.0;
    double q_x = 0.0;
    double q_z = 0.0;
    double f = kDefaultErrorCorrectionInefficiency;

    /// Throws std::invalid_argument when a field is outside its range.
    void validate() const;
};

struct BoundaryPoint {
    double mu;
    double qber_star;
};

/// Grid of secret key rates over (mu, qber) with q_x = q_z = qber.
/// rates is row-major: rates[i * qber_axis.size() + j] is the rate at
/// (mu_axis[i], qber_axis[j]).
struct KeyRateMap {
    std::vector<double> mu_axis;
    std::vector<double> qber_axis;
    std::vector<double> rates;
    std::vector<BoundaryPoint> boundary;

    double rate(std::size_t mu_index, std::size_t qber_index) const {
        return rates[mu_index * qber_axis.size() + qber_index];
    }
};

/// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
double binary_entropy(double x);

/// Infinite-key secret key rate per pulse:
/// R = mu * (exp(-mu) * (1 - H(q_x)) - f * H(q_z)).
double secret_key_rate(const KeyRateInput &in);

/// Root in (0, 0.5) of R(mu, Q, Q, f) = 0 found by bisection. Returns
/// std::nullopt when R is not positive even at Q = 0.
std::optional<double> positive_rate_boundary(
    double mu, double f = kDefaultErrorCorrectionInefficiency, double tol = kDefaultBoundaryTolerance);

KeyRateMap key_rate_map(
    std::span<const double> mu_axis,
    std::span<const double> qber_axis,
    double f = kDefaultErrorCorrectionInefficiency,
    double tol = kDefaultBoundaryTolerance);

/// `count` evenly spaced values from lo to hi inclusive. count == 1 yields {lo}.
std::vector<double> linear_axis(double lo, double hi, std::size_t count);

/// Linearized fidelity estimate F = 1 - 1/(2 sbr). Throws std::domain_error
/// for sbr <= 0.5, where the estimate leaves [0, 1].
double fidelity_from_sbr(double sbr);

/// Expected wrong-click fraction 1/(2(1+sbr)) when the signal always hits the
/// correct detector and unpolarized background splits evenly.
double qber_oracle_from_sbr(double sbr);

/// True iff fidelity is strictly above the 85% classical threshold.
bool classical_bound_check(double fidelity) noexcept;

}  // namespace memqkd
