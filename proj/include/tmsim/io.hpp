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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmsim/errors.hpp"
#include "tmsim/fitting.hpp"
#include "tmsim/fock.hpp"
#include "tmsim/interferometer.hpp"
#include "tmsim/metrology.hpp"
#include "tmsim/version.hpp"

namespace tmsim {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Formatting and provenance
// ---------------------------------------------------------------------------

/// Locale-independent fixed formatting: '.' decimal, 12 significant digits.
inline std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

inline ordered_json provenance_json(const std::string& config_hash) {
    return ordered_json{{"name", "tmsim"}, {"version", kVersion}, {"config_hash", config_hash}};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& config_hash) : f_(path) {
        if (!f_) throw DataError("CsvWriter: cannot open " + path);
        f_ << "# tmsim " << kVersion << "\n";
        f_ << "# config_hash=" << config_hash << "\n";
    }
    void comment(const std::string& line) { f_ << "# " << line << "\n"; }
    void header(const std::vector<std::string>& cols) { write_row(cols); }
    void row(const std::vector<std::string>& cells) { write_row(cells); }

  private:
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) f_ << ',';
            f_ << cells[i];
        }
        f_ << '\n';
    }
    std::ofstream f_;
};

struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // NaN where a cell is not numeric
    std::vector<std::vector<std::string>> raw;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }

    /// Numeric value of (row, column name); non-numeric cells are an error.
    double number(std::size_t row, const std::string& name) const {
        const int c = column(name);
        if (c < 0) throw DataError("csv: missing column " + name);
        const double v = rows.at(row).at(static_cast<std::size_t>(c));
        if (std::isnan(v))
            throw DataError("csv: non-numeric cell in column " + name + ", row " +
                            std::to_string(row));
        return v;
    }
};

/// CSV reader; '#' lines are comments, the first data line is the header.
/// Cells are parsed as doubles where possible (NaN otherwise) and always kept
/// verbatim in `raw`.
inline CsvData read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("read_csv: cannot open " + path);
    CsvData out;
    std::string line;
    bool have_header = false;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            out.columns = cells;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                std::size_t used = 0;
                const double v = std::stod(c, &used);
                row.push_back(used == c.size() ? v
                                               : std::numeric_limits<double>::quiet_NaN());
            } catch (...) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        out.rows.push_back(std::move(row));
        out.raw.push_back(std::move(cells));
    }
    if (!have_header) throw DataError("read_csv: no header in " + path);
    return out;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline ordered_json state_to_json(const TwoModeQubitState& s) {
    ordered_json j;
    j["truncation"] = {{"n_max_a", s.truncation().n_max_a},
                       {"n_max_b", s.truncation().n_max_b},
                       {"leak_tol", s.truncation().leak_tol}};
    ordered_json spins = ordered_json::array();
    for (int q = 0; q < 2; ++q) {
        ordered_json rows = ordered_json::array();
        for (int na = 0; na < s.dim_a(); ++na) {
            ordered_json cols = ordered_json::array();
            for (int nb = 0; nb < s.dim_b(); ++nb) {
                const cplx c = s.at(static_cast<Spin>(q), na, nb);
                cols.push_back(ordered_json::array({c.real(), c.imag()}));
            }
            rows.push_back(std::move(cols));
        }
        spins.push_back(std::move(rows));
    }
    j["amplitudes"] = std::move(spins);
    j["norm_leak"] = s.norm_leak();
    return j;
}

inline TwoModeQubitState state_from_json(const ordered_json& j) {
    const auto& t = j.at("truncation");
    Truncation trunc(t.at("n_max_a").get<int>(), t.at("n_max_b").get<int>(),
                     t.at("leak_tol").get<double>());
    TwoModeQubitState s(trunc);
    const auto& spins = j.at("amplitudes");
    if (spins.size() != 2) throw DataError("state_from_json: need two spin blocks");
    for (int q = 0; q < 2; ++q) {
        const auto& rows = spins.at(q);
        for (int na = 0; na < trunc.dim_a(); ++na)
            for (int nb = 0; nb < trunc.dim_b(); ++nb) {
                const auto& cell = rows.at(na).at(nb);
                s.at(static_cast<Spin>(q), na, nb) =
                    cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
            }
    }
    s.add_norm_leak(j.at("norm_leak").get<double>());
    return s;
}

inline ordered_json fit_result_to_json(const FitResult& fit) {
    ordered_json j;
    ordered_json params = ordered_json::object();
    ordered_json errors = ordered_json::object();
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        params[fit.param_names[i]] = fit.params[k];
        if (fit.has_covariance)
            errors[fit.param_names[i]] = std::sqrt(std::max(0.0, fit.covariance(k, k)));
    }
    j["params"] = params;
    if (fit.has_covariance) {
        j["stderr"] = errors;
        ordered_json cov = ordered_json::array();
        for (Eigen::Index r = 0; r < fit.covariance.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (Eigen::Index c = 0; c < fit.covariance.cols(); ++c)
                row.push_back(fit.covariance(r, c));
            cov.push_back(std::move(row));
        }
        j["covariance"] = std::move(cov);
    }
    j["residual_rms"] = fit.residual_rms;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
}

inline ordered_json report_to_json(const SensitivityReport& r) {
    return ordered_json{{"kind", to_string(r.kind)},
                        {"mean_n", r.mean_n},
                        {"delta_phi", r.delta_phi},
                        {"phi_at_best", r.phi_at_best},
                        {"cr_bound", r.cr_bound},
                        {"sql", r.sql},
                        {"db_vs_sql", r.db_vs_sql},
                        {"beta_used", r.beta_used}};
}

inline void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream f(path);
    if (!f) throw DataError("write_json: cannot open " + path);
    f << j.dump(2) << "\n";
}

/// Fringe dataset as CSV rows (phi_rad, p_down, shots).
inline void write_fringe_csv(const std::string& path, const FringeDataset& ds,
                             const std::string& config_hash,
                             const std::vector<std::string>& extra_comments = {}) {
    CsvWriter w(path, config_hash);
    w.comment(std::string("kind=") + to_string(ds.program.kind));
    for (const auto& c : extra_comments) w.comment(c);
    w.header({"phi_rad", "p_down", "shots"});
    for (const auto& pt : ds.points)
        w.row({fmt_g(pt.phi), fmt_g(pt.p_down), std::to_string(pt.shots)});
}

inline FringeDataset read_fringe_csv(const std::string& path) {
    const CsvData csv = read_csv(path);
    if (csv.column("phi_rad") < 0 || csv.column("p_down") < 0)
        throw DataError("read_fringe_csv: need phi_rad and p_down columns");
    const int c_shots = csv.column("shots");
    FringeDataset ds;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        FringePoint pt;
        pt.phi = csv.number(i, "phi_rad");
        pt.p_down = csv.number(i, "p_down");
        pt.shots = (c_shots >= 0) ? static_cast<long>(csv.number(i, "shots")) : 0;
        ds.points.push_back(pt);
    }
    return ds;
}

inline RabiDataset read_rabi_csv(const std::string& path) {
    const CsvData csv = read_csv(path);
    if (csv.column("t_seconds") < 0 || csv.column("p_down") < 0)
        throw DataError("read_rabi_csv: need t_seconds and p_down columns");
    const int c_shots = csv.column("shots");
    RabiDataset ds;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        ds.times.push_back(csv.number(i, "t_seconds"));
        ds.p_down.push_back(csv.number(i, "p_down"));
        if (c_shots >= 0) ds.shots.push_back(static_cast<long>(csv.number(i, "shots")));
    }
    return ds;
}

/// Readout curve CSV: (t_seconds | phi_rad), p_down, model_name.
inline void write_curve_csv(const std::string& path, const std::string& x_name,
                            const std::vector<double>& x, const std::vector<double>& p,
                            const std::string& model_name, const std::string& config_hash) {
    if (x.size() != p.size()) throw DataError("write_curve_csv: length mismatch");
    CsvWriter w(path, config_hash);
    w.header({x_name, "p_down", "model_name"});
    for (std::size_t i = 0; i < x.size(); ++i)
        w.row({fmt_g(x[i]), fmt_g(p[i]), model_name});
}

} // namespace tmsim
