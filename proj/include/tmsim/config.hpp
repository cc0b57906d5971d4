// Copyright 2026 The tmsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tmsim/errors.hpp"
#include "tmsim/interferometer.hpp"

namespace tmsim {

// ---------------------------------------------------------------------------
// Experiment configuration: a TOML-style sectioned key = value text file.
//
//   [circuit]
//   kind = "su11_two"       # su2 | su11_single | su11_two
//   r0 = 1.32               # or alpha0 = ... for su2
//   phi0 = 0.0
//   v0 = 0.0
//
//   [readout]
//   mode = "a"              # a | b
//   kind = "red"            # red | blue
//   beta = 1.5708
//
//   [grid]
//   phi_start = 0.0
//   phi_stop = 6.2832
//   points = 41
//
//   [sampling]
//   shots = 250             # omit or 0 for exact probabilities
//   seed = 7
//
//   [truncation]            # optional override of the automatic rule
//   n_max_a = 96
//   n_max_b = 96
//   leak_tol = 1e-6
//
//   [output]
//   dir = "out"
// ---------------------------------------------------------------------------

class ConfigFile {
  public:
    static ConfigFile parse(const std::string& text) {
        ConfigFile cfg;
        cfg.raw_ = text;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string s = strip(strip_comment(line));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": unterminated section header");
                section = strip(s.substr(1, s.size() - 2));
                if (section.empty())
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": empty section name");
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = strip(s.substr(0, eq));
            std::string value = strip(s.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty key or value");
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
                value = value.substr(1, value.size() - 2);
            cfg.values_[section + "." + key] = value;
        }
        return cfg;
    }

    static ConfigFile load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw ConfigError("cannot open config file " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

    const std::string& raw_text() const { return raw_; }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }
    std::string require_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("config: missing key " + key);
        return it->second;
    }
    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return to_double(key, it->second);
    }
    double require_double(const std::string& key) const {
        return to_double(key, require_string(key));
    }
    long get_long(const std::string& key, long fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return to_long(key, it->second);
    }

  private:
    static std::string strip(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }
    static std::string strip_comment(const std::string& s) {
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') quoted = !quoted;
            if (s[i] == '#' && !quoted) return s.substr(0, i);
        }
        return s;
    }
    static double to_double(const std::string& key, const std::string& v) {
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (...) {
            throw ConfigError("config: key " + key + " is not a number: '" + v + "'");
        }
    }
    static long to_long(const std::string& key, const std::string& v) {
        try {
            std::size_t used = 0;
            const long x = std::stol(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (...) {
            throw ConfigError("config: key " + key + " is not an integer: '" + v + "'");
        }
    }

    std::string raw_;
    std::map<std::string, std::string> values_;
};

inline CircuitKind parse_circuit_kind(const std::string& s) {
    if (s == "su2") return CircuitKind::su2;
    if (s == "su11_single") return CircuitKind::su11_single;
    if (s == "su11_two") return CircuitKind::su11_two;
    throw ConfigError("unknown circuit kind '" + s + "' (su2 | su11_single | su11_two)");
}

struct ExperimentConfig {
    CircuitProgram program;
    std::vector<double> phi_grid;
    long shots = 0;
    std::uint64_t seed = 0;
    std::string out_dir;

    static ExperimentConfig from_config(const ConfigFile& cfg) {
        ExperimentConfig ex;
        ex.program.kind = parse_circuit_kind(cfg.require_string("circuit.kind"));
        if (ex.program.kind == CircuitKind::su2) {
            ex.program.state_param = cfg.require_double("circuit.alpha0");
        } else {
            ex.program.state_param = cfg.require_double("circuit.r0");
        }
        ex.program.phi0 = cfg.get_double("circuit.phi0", 0.0);
        ex.program.v0 = cfg.get_double("circuit.v0", 0.0);

        const std::string mode = cfg.get_string("readout.mode", "a");
        if (mode == "a")
            ex.program.readout.mode = Mode::a;
        else if (mode == "b")
            ex.program.readout.mode = Mode::b;
        else
            throw ConfigError("readout.mode must be a | b");
        const std::string rkind = cfg.get_string("readout.kind", "red");
        if (rkind == "red")
            ex.program.readout.kind = SidebandKind::red;
        else if (rkind == "blue")
            ex.program.readout.kind = SidebandKind::blue;
        else
            throw ConfigError("readout.kind must be red | blue");
        ex.program.readout.beta = cfg.get_double("readout.beta", kTwoPi / 4.0);

        const double lo = cfg.get_double("grid.phi_start", 0.0);
        const double hi = cfg.get_double("grid.phi_stop", kTwoPi);
        const long n = cfg.get_long("grid.points", 0);
        if (n < 1) throw ConfigError("grid.points must be a positive integer");
        if (!(hi > lo)) throw ConfigError("grid.phi_stop must exceed grid.phi_start");
        for (long i = 0; i < n; ++i)
            ex.phi_grid.push_back(lo + (hi - lo) * (n == 1 ? 0.0 : static_cast<double>(i) /
                                                                        (n - 1.0)));

        ex.shots = cfg.get_long("sampling.shots", 0);
        ex.seed = static_cast<std::uint64_t>(cfg.get_long("sampling.seed", 0));
        if (ex.shots < 0) throw ConfigError("sampling.shots must be nonnegative");

        if (cfg.has("truncation.n_max_a") || cfg.has("truncation.n_max_b")) {
            const int na = static_cast<int>(cfg.get_long("truncation.n_max_a", 32));
            const int nb = static_cast<int>(cfg.get_long("truncation.n_max_b", 32));
            const double tol = cfg.get_double("truncation.leak_tol", 1e-6);
            ex.program.truncation = Truncation(na, nb, tol);
        }
        ex.out_dir = cfg.get_string("output.dir", "");
        ex.program.validate();
        return ex;
    }
};

} // namespace tmsim
