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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "memqkd/config.h"
#include "memqkd/experiment.h"
#include "memqkd/keyrate.h"
#include "memqkd/report.h"

namespace memqkd::cli {

namespace {

namespace fs = std::filesystem;

/// Input the user supplied incorrectly: bad flags, configs or ranges.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OperatingPoint {
    const char *label;
    double mu;
    double qber;
};

// Bare-memory and noise-suppressed regimes.
constexpr OperatingPoint kOperatingPoints[] = {
    {"bare-memory", 1.6, 0.119},
    {"noise-free", 1.0, 0.03},
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read config file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunConfig load_config(const std::string &preset, const std::string &config_path) {
    if (!preset.empty()) {
        auto p = preset_from_name(preset);
        if (!p) {
            throw UsageError("unknown preset '" + preset + "' (expected experiment1..experiment5)");
        }
        return preset_config(*p);
    }
    if (!config_path.empty()) {
        return parse_config(read_file(config_path));
    }
    throw UsageError("one of --preset or --config is required");
}

fs::path resolve_output_dir(const std::string &flag, const RunConfig *cfg) {
    if (!flag.empty()) {
        return flag;
    }
    if (cfg != nullptr && !cfg->output_dir.empty()) {
        return cfg->output_dir;
    }
    if (const char *env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("failed to write " + path.string());
    }
}

template <typename Writer>
void write_csv(const fs::path &path, Writer &&writer) {
    std::ofstream out(path, std::ios::binary);
    writer(out);
    if (!out) {
        throw std::runtime_error("failed to write " + path.string());
    }
}

std::string rate_verdict(double rate) { return rate > 0.0 ? "inside positive region" : "outside positive region"; }

struct RunOptions {
    std::string preset;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> pulses;
    unsigned workers = 0;
    std::string output_dir;
    bool no_pulse_csv = false;
};

int command_run(const RunOptions &opt, std::ostream &out) {
    if (!opt.preset.empty() && !opt.config.empty()) {
        throw UsageError("--preset and --config are mutually exclusive");
    }
    RunConfig cfg = load_config(opt.preset, opt.config);
    if (opt.seed) {
        cfg.seed = *opt.seed;
    }
    if (opt.pulses) {
        cfg.source.n_pulses = *opt.pulses;
    }
    cfg.validate();

    unsigned workers = opt.workers != 0 ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    fs::path dir = resolve_output_dir(opt.output_dir, &cfg);
    fs::create_directories(dir);

    ExperimentResult result = run_experiment(cfg, workers);
    std::string label = !opt.preset.empty() ? opt.preset : fs::path(opt.config).stem().string();
    std::string summary = summary_text(result, label);

    if (!opt.no_pulse_csv) {
        write_csv(dir / "pulses.csv", [&](std::ostream &o) { write_pulse_csv(o, result); });
    }
    write_csv(dir / "histogram.csv", [&](std::ostream &o) { write_histogram_csv(o, result.histogram); });
    write_text(dir / "summary.txt", summary);
    out << summary;
    return kExitSuccess;
}

struct SweepOptions {
    std::vector<double> mu_range{0.1, 3.0};
    std::vector<double> qber_range{0.0, 0.15};
    std::vector<std::size_t> resolution{50};
    double f = kDefaultErrorCorrectionInefficiency;
    double tol = kDefaultBoundaryTolerance;
    std::vector<double> points;
    std::string output_dir;
};

int command_sweep(const SweepOptions &opt, std::ostream &out) {
    if (opt.points.size() % 2 != 0) {
        throw UsageError("--point takes a mu and a qber value");
    }
    const std::size_t mu_res = opt.resolution.front();
    const std::size_t q_res = opt.resolution.size() > 1 ? opt.resolution[1] : mu_res;
    std::vector<double> mu_axis;
    std::vector<double> q_axis;
    try {
        mu_axis = linear_axis(opt.mu_range[0], opt.mu_range[1], mu_res);
        q_axis = linear_axis(opt.qber_range[0], opt.qber_range[1], q_res);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("bad sweep range: ") + e.what());
    }
    if (!(opt.mu_range[0] > 0.0) || opt.qber_range[0] < 0.0 || opt.qber_range[1] > 0.5) {
        throw UsageError("mu must be positive and qber must lie in [0, 0.5]");
    }
    if (!(opt.f >= 1.0) || !(opt.tol > 0.0)) {
        throw UsageError("--f must be >= 1 and --tol positive");
    }

    KeyRateMap map = key_rate_map(mu_axis, q_axis, opt.f, opt.tol);
    fs::path dir = resolve_output_dir(opt.output_dir, nullptr);
    fs::create_directories(dir);
    write_csv(dir / "keyrate_map.csv", [&](std::ostream &o) { write_keyrate_csv(o, map); });
    write_csv(dir / "keyrate_boundary.csv", [&](std::ostream &o) { write_boundary_csv(o, map); });

    out << "grid = " << mu_axis.size() << 'x' << q_axis.size() << '\n';
    out << "boundary_points = " << map.boundary.size() << '\n';
    for (const OperatingPoint &p : kOperatingPoints) {
        if (p.mu < mu_axis.front() || p.mu > mu_axis.back() || p.qber < q_axis.front() || p.qber > q_axis.back()) {
            continue;
        }
        double rate = secret_key_rate({p.mu, p.qber, p.qber, opt.f});
        out << "operating_point " << p.label << " mu=" << format_sig(p.mu) << " qber=" << format_sig(p.qber)
            << " rate=" << format_sig(rate) << ' ' << rate_verdict(rate) << '\n';
    }
    for (std::size_t k = 0; k < opt.points.size(); k += 2) {
        const double mu = opt.points[k];
        const double q = opt.points[k + 1];
        KeyRateInput in{mu, q, q, opt.f};
        try {
            in.validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("bad --point: ") + e.what());
        }
        double rate = secret_key_rate(in);
        out << "point mu=" << format_sig(mu) << " qber=" << format_sig(q) << " rate=" << format_sig(rate) << ' '
            << rate_verdict(rate) << '\n';
    }
    return kExitSuccess;
}

int command_calibrate(double target_sbr, double mu, double efficiency, std::ostream &out) {
    double background;
    try {
        background = calibrate_background(efficiency, mu, target_sbr);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    RunConfig fragment;
    fragment.memory.retrieval_efficiency = efficiency;
    fragment.memory.background_mean = background;
    fragment.memory.noise_suppression = 1.0;
    out << "[memory]\n";
    out << "retrieval_efficiency = " << format_roundtrip(fragment.memory.retrieval_efficiency) << '\n';
    out << "background_mean = " << format_roundtrip(fragment.memory.background_mean) << '\n';
    out << "noise_suppression = " << format_roundtrip(fragment.memory.noise_suppression) << '\n';
    return kExitSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Monte Carlo simulator for memory-assisted free-space BB84", "memqkd"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto *run = app.add_subcommand("run", "Simulate a preset or configured experiment");
    run->add_option("--preset", run_opt.preset, "experiment1 .. experiment5");
    run->add_option("--config", run_opt.config, "INI configuration file");
    run->add_option("--seed", run_opt.seed, "64-bit seed (overrides the configuration)");
    run->add_option("--pulses", run_opt.pulses, "Number of pulses (overrides the configuration)");
    run->add_option("--workers", run_opt.workers, "Worker threads (0 = hardware concurrency)");
    run->add_option("--output-dir", run_opt.output_dir, std::string("Output directory (default $") + kOutputDirEnv + ")");
    run->add_flag("--no-pulse-csv", run_opt.no_pulse_csv, "Skip the per-pulse CSV");

    SweepOptions sweep_opt;
    auto *sweep = app.add_subcommand("sweep-keyrate", "Tabulate the secret key rate and its zero boundary");
    sweep->add_option("--mu-range", sweep_opt.mu_range, "Lowest and highest mean photon number")->expected(2);
    sweep->add_option("--qber-range", sweep_opt.qber_range, "Lowest and highest QBER")->expected(2);
    sweep->add_option("--resolution", sweep_opt.resolution, "Grid points: N or N_MU N_QBER")->expected(1, 2);
    sweep->add_option("--f", sweep_opt.f, "Error-correction inefficiency");
    sweep->add_option("--tol", sweep_opt.tol, "Boundary bisection tolerance");
    sweep->add_option("--point", sweep_opt.points, "Extra point query: MU QBER")
        ->expected(2)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sweep->add_option("--output-dir", sweep_opt.output_dir, "Output directory");

    double target_sbr = 0.0;
    double calib_mu = 0.0;
    double efficiency = kCalibratedRetrievalEfficiency;
    auto *calibrate = app.add_subcommand("calibrate", "Print the memory background giving a target SBR");
    calibrate->add_option("--target-sbr", target_sbr, "Target signal-to-background ratio")->required();
    calibrate->add_option("--mu", calib_mu, "Mean photon number at the memory input")->required();
    calibrate->add_option("--retrieval-efficiency", efficiency, "Memory retrieval efficiency");

    std::string show_preset;
    std::string show_config;
    auto *print = app.add_subcommand("print-config", "Print a preset or configuration as INI");
    print->add_option("--preset", show_preset, "experiment1 .. experiment5");
    print->add_option("--config", show_config, "INI configuration file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (*run) {
            return command_run(run_opt, out);
        }
        if (*sweep) {
            return command_sweep(sweep_opt, out);
        }
        if (*calibrate) {
            return command_calibrate(target_sbr, calib_mu, efficiency, out);
        }
        if (*print) {
            out << serialize_config(load_config(show_preset, show_config));
            return kExitSuccess;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "runtime error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitRuntimeError;
}

}  // namespace memqkd::cli
