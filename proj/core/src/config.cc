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

#include "memqkd/config.h"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "memqkd/report.h"

namespace memqkd {

namespace {

struct Field {
    std::string_view section;
    std::string_view key;
    // Returns false when the text cannot be parsed as the field's type.
    std::function<bool(RunConfig &, std::string_view)> set;
    std::function<std::string(const RunConfig &)> get;
};

bool parse_double(std::string_view text, double &out) {
    const char *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_u64(std::string_view text, std::uint64_t &out) {
    const char *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

template <typename Member>
Field number(std::string_view section, std::string_view key, Member member) {
    return {
        section,
        key,
        [member](RunConfig &cfg, std::string_view text) { return parse_double(text, member(cfg)); },
        [member](const RunConfig &cfg) { return format_roundtrip(member(cfg)); },
    };
}

template <typename Member>
Field count(std::string_view section, std::string_view key, Member member) {
    return {
        section,
        key,
        [member](RunConfig &cfg, std::string_view text) { return parse_u64(text, member(cfg)); },
        [member](const RunConfig &cfg) { return std::to_string(member(cfg)); },
    };
}

template <typename Enum, typename Member>
Field choice(std::string_view section, std::string_view key, Member member,
             std::vector<std::pair<std::string_view, Enum>> names) {
    return {
        section,
        key,
        [member, names](RunConfig &cfg, std::string_view text) {
            for (const auto &[name, value] : names) {
                if (text == name) {
                    member(cfg) = value;
                    return true;
                }
            }
            return false;
        },
        [member](const RunConfig &cfg) { return std::string(to_string(member(cfg))); },
    };
}

const std::vector<Field> &fields() {
    static const std::vector<Field> table = {
        number("source", "pulse_width_ns", [](auto &c) -> auto & { return c.source.pulse_width_ns; }),
        number("source", "pulse_period_ns", [](auto &c) -> auto & { return c.source.pulse_period_ns; }),
        choice<SourceMode>(
            "source", "mode", [](auto &c) -> auto & { return c.source.mode; },
            {{"ordered", SourceMode::ordered}, {"random", SourceMode::random}}),
        number("source", "mu_alice", [](auto &c) -> auto & { return c.source.mu_alice; }),
        count("source", "n_pulses", [](auto &c) -> auto & { return c.source.n_pulses; }),

        number("channel", "transmission", [](auto &c) -> auto & { return c.channel.transmission; }),
        number("channel", "rel_fluctuation", [](auto &c) -> auto & { return c.channel.rel_fluctuation; }),
        choice<GainModel>(
            "channel", "gain_model", [](auto &c) -> auto & { return c.channel.gain_model; },
            {{"normal", GainModel::truncated_normal}, {"lognormal", GainModel::lognormal}}),

        number("memory", "retrieval_efficiency",
               [](auto &c) -> auto & { return c.memory.retrieval_efficiency; }),
        number("memory", "leak_fraction", [](auto &c) -> auto & { return c.memory.leak_fraction; }),
        number("memory", "background_mean", [](auto &c) -> auto & { return c.memory.background_mean; }),
        number("memory", "retrieval_delay_ns", [](auto &c) -> auto & { return c.memory.retrieval_delay_ns; }),
        number("memory", "roi_width_ns", [](auto &c) -> auto & { return c.memory.roi_width_ns; }),
        number("memory", "noise_suppression", [](auto &c) -> auto & { return c.memory.noise_suppression; }),

        number("analysis", "bin_width_ns", [](auto &c) -> auto & { return c.analysis.bin_width_ns; }),
        number("analysis", "record_start_ns", [](auto &c) -> auto & { return c.analysis.record_start_ns; }),
        number("analysis", "record_end_ns", [](auto &c) -> auto & { return c.analysis.record_end_ns; }),
        number("analysis", "background_start_ns",
               [](auto &c) -> auto & { return c.analysis.background_start_ns; }),
        number("analysis", "background_end_ns", [](auto &c) -> auto & { return c.analysis.background_end_ns; }),
        choice<DoubleClickPolicy>(
            "analysis", "double_click_policy",
            [](auto &c) -> auto & { return c.analysis.double_click; },
            {{"random", DoubleClickPolicy::random_bit}, {"discard", DoubleClickPolicy::discard}}),

        count("run", "seed", [](auto &c) -> auto & { return c.seed; }),
        {
            "run",
            "output_dir",
            [](RunConfig &c, std::string_view text) {
                c.output_dir = std::string(text);
                return true;
            },
            [](const RunConfig &c) { return c.output_dir; },
        },
    };
    return table;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
    const auto pos = s.find_first_of("#;");
    return pos == std::string_view::npos ? s : s.substr(0, pos);
}

[[noreturn]] void fail(int line, const std::string &message) {
    throw ConfigError(line, "line " + std::to_string(line) + ": " + message);
}

}  // namespace

ConfigError::ConfigError(int line, const std::string &message) : std::runtime_error(message), line_(line) {}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::map<std::string, int, std::less<>> seen;

    int line_no = 0;
    while (!text.empty()) {
        line_no++;
        const auto newline = text.find('\n');
        std::string_view raw = text.substr(0, newline);
        text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line_no, "malformed section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            bool known = false;
            for (const Field &f : fields()) {
                known = known || f.section == section;
            }
            if (!known) {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(line_no, "expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail(line_no, "missing key before '='");
        }
        if (section.empty()) {
            fail(line_no, "key '" + std::string(key) + "' appears before any section header");
        }
        const std::string qualified = section + "." + std::string(key);
        const Field *field = nullptr;
        for (const Field &f : fields()) {
            if (f.section == section && f.key == key) {
                field = &f;
                break;
            }
        }
        if (field == nullptr) {
            fail(line_no, "unknown key '" + std::string(key) + "' in section [" + section + "]");
        }
        if (seen.contains(qualified)) {
            fail(line_no, "duplicate key " + qualified);
        }
        if (!field->set(cfg, value)) {
            fail(line_no, "invalid value '" + std::string(value) + "' for " + qualified);
        }
        seen.emplace(qualified, line_no);
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        // Messages start with the qualified field name.
        std::string message = e.what();
        std::string name = message.substr(0, message.find(' '));
        auto it = seen.find(name);
        if (it == seen.end()) {
            throw ConfigError(0, message);
        }
        fail(it->second, message);
    }
    return cfg;
}

std::string serialize_config(const RunConfig &cfg) {
    std::ostringstream out;
    std::string_view section;
    for (const Field &f : fields()) {
        if (f.section != section) {
            if (!section.empty()) {
                out << '\n';
            }
            section = f.section;
            out << '[' << section << "]\n";
        }
        out << f.key << " = " << f.get(cfg) << '\n';
    }
    return out.str();
}

}  // namespace memqkd
