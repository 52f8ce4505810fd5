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

#include "memqkd/report.h"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace memqkd {

namespace {

void put_sig(std::ostringstream &out, std::string_view key, double value) {
    out << key << " = " << format_sig(value) << '\n';
}

void put_count(std::ostringstream &out, std::string_view key, std::uint64_t value) {
    out << key << " = " << value << '\n';
}

}  // namespace

std::string format_roundtrip(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string format_sig(double value, int digits) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    return std::string(buf, ptr);
}

void write_pulse_csv(std::ostream &out, const ExperimentResult &result) {
    out << "index,emit_time_ns,state,mu_eff,bob_basis,clicks_d0,clicks_d1,leak_clicks,sifted,error\n";
    for (std::size_t k = 0; k < result.pulses.size(); k++) {
        const PulseRecord &p = result.pulses[k];
        const ClickRecord &c = result.clicks[k];
        const SiftOutcome &o = result.outcomes[k];
        out << p.index << ',' << format_sig(p.emit_time_ns, 12) << ',' << to_char(p.state) << ','
            << format_sig(p.mu_effective) << ',' << to_char(c.bob_basis) << ',' << c.clicks[0] << ','
            << c.clicks[1] << ',' << c.leak_clicks << ',' << (o.sifted ? 1 : 0) << ',' << (o.error ? 1 : 0)
            << '\n';
    }
}

void write_histogram_csv(std::ostream &out, const Histogram &h) {
    out << "bin_start_ns,count\n";
    auto counts = h.counts();
    for (std::size_t k = 0; k < h.bin_count(); k++) {
        out << format_sig(h.bin_start(k)) << ',' << counts[k] << '\n';
    }
}

void write_keyrate_csv(std::ostream &out, const KeyRateMap &map) {
    out << "mu,qber,rate\n";
    for (std::size_t i = 0; i < map.mu_axis.size(); i++) {
        for (std::size_t j = 0; j < map.qber_axis.size(); j++) {
            out << format_sig(map.mu_axis[i]) << ',' << format_sig(map.qber_axis[j]) << ','
                << format_sig(map.rate(i, j)) << '\n';
        }
    }
}

void write_boundary_csv(std::ostream &out, const KeyRateMap &map) {
    out << "mu,qber_star\n";
    for (const BoundaryPoint &b : map.boundary) {
        out << format_sig(b.mu) << ',' << format_sig(b.qber_star) << '\n';
    }
}

std::string summary_text(const ExperimentResult &result, std::string_view label) {
    const RunConfig &cfg = result.config;
    std::ostringstream out;
    out << "label = " << label << '\n';
    put_count(out, "seed", cfg.seed);
    put_count(out, "pulses", cfg.source.n_pulses);
    out << "source_mode = " << to_string(cfg.source.mode) << '\n';
    put_sig(out, "mean_mu_in", result.mean_mu_in);
    put_count(out, "photons_arrived", result.tally.arrived);
    put_count(out, "photons_retrieved", result.tally.retrieved);
    put_count(out, "photons_leaked", result.tally.leaked);
    put_count(out, "photons_lost", result.tally.lost);
    put_count(out, "roi_background", result.tally.roi_background);
    put_count(out, "n_sifted_z", result.sifted.n_sifted_z);
    put_count(out, "n_err_z", result.sifted.n_err_z);
    put_sig(out, "qber_z", result.sifted.qber_z());
    put_count(out, "n_sifted_x", result.sifted.n_sifted_x);
    put_count(out, "n_err_x", result.sifted.n_err_x);
    put_sig(out, "qber_x", result.sifted.qber_x());
    put_sig(out, "qber_mean", result.sifted.mean_qber());
    put_sig(out, "sbr_eta", result.sbr.eta);
    put_sig(out, "sbr_q", result.sbr.q);
    put_sig(out, "sbr", result.sbr.sbr);
    put_sig(out, "expected_sbr", cfg.expected_sbr());
    if (result.sbr.sbr >= 0.0) {
        put_sig(out, "oracle_qber", qber_oracle_from_sbr(result.sbr.sbr));
    } else {
        out << "oracle_qber = undefined\n";
    }
    if (result.sbr.sbr > 0.5) {
        const double fidelity = fidelity_from_sbr(result.sbr.sbr);
        put_sig(out, "fidelity", fidelity);
        out << "classical_bound = " << (classical_bound_check(fidelity) ? "pass" : "fail") << '\n';
    } else {
        out << "fidelity = undefined\n";
        out << "classical_bound = undefined\n";
    }
    const SbrEstimate hist = sbr_from_histogram(
        result.histogram,
        cfg.memory.retrieval_delay_ns,
        cfg.memory.roi_width_ns,
        {cfg.analysis.background_start_ns, cfg.analysis.background_end_ns});
    put_sig(out, "histogram_sbr", hist.sbr);
    put_count(out, "histogram_dropped", result.histogram.dropped());
    return out.str();
}

}  // namespace memqkd
