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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmsim/config.hpp"
#include "tmsim/fitting.hpp"
#include "tmsim/io.hpp"
#include "tmsim/metrology.hpp"

namespace tmsim::cli {

// Exit codes: 0 success, 2 configuration/usage, 3 truncation guard,
// 4 non-convergence, 5 bad data or domain error, 1 anything else.
enum ExitCode {
    kOk = 0,
    kOther = 1,
    kConfig = 2,
    kTruncation = 3,
    kConvergence = 4,
    kData = 5,
};

namespace detail {

inline std::string out_path(const std::string& dir, const std::string& file) {
    namespace fs = std::filesystem;
    std::string d = dir;
    if (d.empty()) {
        const char* env = std::getenv("TMSIM_OUT_DIR");
        d = (env && *env) ? env : ".";
    }
    fs::create_directories(d);
    return (fs::path(d) / file).string();
}

inline void emit_error(int code, const std::string& kind, const std::string& message) {
    ordered_json j;
    j["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

inline std::vector<double> linspace(double lo, double hi, long n) {
    std::vector<double> g;
    for (long i = 0; i < n; ++i)
        g.push_back(lo + (hi - lo) * (n == 1 ? 0.0 : static_cast<double>(i) / (n - 1.0)));
    return g;
}

struct FringeArgs {
    std::string config_path;
    std::string out_dir;
    std::string engine = "sim";
    bool paper_literal = false;
};

inline int cmd_fringe(const FringeArgs& a) {
    const ConfigFile cfg = ConfigFile::load(a.config_path);
    const ExperimentConfig ex = ExperimentConfig::from_config(cfg);
    const std::string hash = hash_hex(cfg.raw_text());
    FringeDataset ds;
    if (a.engine == "sim") {
        ds = sweep_fringe(ex.program, ex.phi_grid, ex.shots, ex.seed);
    } else if (a.engine == "model") {
        FringeModel m = FringeModel::from_program(
            ex.program,
            a.paper_literal ? SeriesKernel::printed_cosine : SeriesKernel::probability);
        ds = model_fringe_dataset(m, ex.phi_grid, ex.shots, ex.seed);
    } else {
        throw ConfigError("--engine must be sim | model");
    }
    const std::string dir = a.out_dir.empty() ? ex.out_dir : a.out_dir;
    const std::string path = out_path(dir, "fringe.csv");
    write_fringe_csv(path, ds, hash,
                     {"engine=" + a.engine, "seed=" + std::to_string(ds.seed),
                      "state_param=" + fmt_g(ds.program.state_param)});
    std::cout << path << "\n";
    return kOk;
}

struct BoundsArgs {
    std::string kind = "su11_two";
    double nbar = 0.0;
    double nbar_min = 0.0, nbar_max = 0.0;
    long steps = 0;
    std::string out_dir;
};

inline int cmd_bounds(const BoundsArgs& a) {
    std::vector<CircuitKind> kinds;
    if (a.kind == "all")
        kinds = {CircuitKind::su2, CircuitKind::su11_single, CircuitKind::su11_two};
    else
        kinds = {parse_circuit_kind(a.kind)};
    std::vector<double> grid;
    if (a.steps > 0)
        grid = linspace(a.nbar_min, a.nbar_max, a.steps);
    else if (a.nbar > 0)
        grid = {a.nbar};
    else
        throw ConfigError("bounds: give --nbar or --nbar-min/--nbar-max/--steps");

    const std::string canonical = "bounds kind=" + a.kind + " nbar=" + fmt_g(a.nbar) +
                                  " min=" + fmt_g(a.nbar_min) + " max=" + fmt_g(a.nbar_max) +
                                  " steps=" + std::to_string(a.steps);
    const std::string path = out_path(a.out_dir, "bounds.csv");
    CsvWriter w(path, hash_hex(canonical));
    w.header({"kind", "mean_n", "delta_phi", "sql", "db_vs_sql"});
    for (CircuitKind k : kinds)
        for (double n : grid) {
            const double dphi = cr_bound(k, n);
            const double sql = 1.0 / std::sqrt(n);
            w.row({to_string(k), fmt_g(n), fmt_g(dphi), fmt_g(sql),
                   fmt_g(db_vs_sql(dphi, n))});
            std::cout << to_string(k) << " mean_n=" << fmt_g(n)
                      << " delta_phi=" << fmt_g(dphi) << " sql=" << fmt_g(sql)
                      << " db_vs_sql=" << fmt_g(db_vs_sql(dphi, n)) << "\n";
        }
    std::cout << path << "\n";
    return kOk;
}

struct VerifyTmsArgs {
    double nbar = 3.04;
    int n_max = 110;
    std::string out_dir;
};

inline int cmd_verify_tms(const VerifyTmsArgs& a) {
    if (!(a.nbar > 0)) throw ConfigError("verify-tms: --nbar must be positive");
    const double r = std::asinh(std::sqrt(a.nbar));
    const Truncation trunc(a.n_max, a.n_max, 1e-6);
    const std::string canonical =
        "verify-tms nbar=" + fmt_g(a.nbar) + " n_max=" + std::to_string(a.n_max);
    const std::string hash = hash_hex(canonical);

    const auto tms = two_mode_squeeze(make_vacuum(trunc), r);
    const auto pa = fock_marginal(tms, Mode::a);
    const auto pb = fock_marginal(tms, Mode::b);
    const double nbar_a = number_stats(tms, Marginal::mode_a).mean;
    const double nbar_b = number_stats(tms, Marginal::mode_b).mean;
    const auto geom = thermal_weights(std::pow(std::sinh(r), 2), a.n_max);
    double worst_geom = 0.0;
    for (int n = 0; n <= a.n_max; ++n)
        worst_geom = std::max(worst_geom, std::abs(pa[n] - geom[n]));

    const auto split = beamsplitter(tms, kTwoPi / 8.0, 0.0);
    const auto qa = fock_marginal(split, Mode::a);
    const auto qb = fock_marginal(split, Mode::b);
    const double r_hat_a = std::asinh(std::sqrt(number_stats(split, Marginal::mode_a).mean));
    const double r_hat_b = std::asinh(std::sqrt(number_stats(split, Marginal::mode_b).mean));
    const auto product = single_mode_squeeze(
        single_mode_squeeze(make_vacuum(trunc), r, 0.0, Mode::a), r, kTwoPi / 2.0, Mode::b);
    const double fid = fidelity(split, product);
    const double purity_a = mode_purity(split, Mode::a);

    // Squeezed-vacuum model populations for the post-splitter marginals.
    std::vector<double> sq(a.n_max + 1, 0.0);
    {
        const double v = std::pow(std::sinh(r), 2);
        double w0 = 1.0 / std::sqrt(1.0 + v);
        for (int m = 0; 2 * m <= a.n_max; ++m) {
            sq[2 * m] = w0;
            w0 *= (2.0 * m + 1.0) / (2.0 * m + 2.0) * (v / (1.0 + v));
        }
    }

    const std::string csv_path = out_path(a.out_dir, "verify_tms_populations.csv");
    CsvWriter w(csv_path, hash);
    w.comment("p_*_tms: marginals after the two-mode squeezer");
    w.comment("p_*_split: marginals after the 50/50 beamsplitter");
    w.header({"n", "p_a_tms", "p_b_tms", "p_thermal_model", "p_a_split", "p_b_split",
              "p_squeezed_model"});
    for (int n = 0; n <= a.n_max; ++n)
        w.row({std::to_string(n), fmt_g(pa[n]), fmt_g(pb[n]), fmt_g(geom[n]), fmt_g(qa[n]),
               fmt_g(qb[n]), fmt_g(sq[n])});

    ordered_json j;
    j["tool"] = provenance_json(hash);
    j["nbar_target"] = a.nbar;
    j["r"] = r;
    j["thermal_stage"] = {{"nbar_a", nbar_a},
                          {"nbar_b", nbar_b},
                          {"max_abs_dev_from_geometric", worst_geom},
                          {"nbar_a_matches_target_1e6", std::abs(nbar_a - a.nbar) < 1e-6}};
    j["splitter_stage"] = {{"r_hat_a", r_hat_a},
                           {"r_hat_b", r_hat_b},
                           {"r_hat_matches_target_1e6",
                            std::abs(r_hat_a - r) < 1e-6 && std::abs(r_hat_b - r) < 1e-6},
                           {"fidelity_vs_squeezed_product", fid},
                           {"purity_mode_a", purity_a}};
    const std::string json_path = out_path(a.out_dir, "verify_tms.json");
    write_json(json_path, j);
    std::cout << j.dump(2) << "\n" << csv_path << "\n" << json_path << "\n";
    return kOk;
}

struct SensitivityArgs {
    std::string kind = "all";
    double nbar_min = 0.5, nbar_max = 3.0;
    long steps = 6;
    long phi_points = 721;
    long beta_points = 25;
    bool no_optimize_beta = false;
    bool paper_literal = false;
    double beta = kTwoPi / 4.0;
    std::string out_dir;
};

inline int cmd_sensitivity(const SensitivityArgs& a) {
    std::vector<CircuitKind> kinds;
    if (a.kind == "all")
        kinds = {CircuitKind::su2, CircuitKind::su11_single, CircuitKind::su11_two};
    else
        kinds = {parse_circuit_kind(a.kind)};
    if (a.steps < 1 || a.phi_points < 16)
        throw ConfigError("sensitivity: need --steps >= 1 and --phi-points >= 16");

    const std::string canonical = "sensitivity kind=" + a.kind + " min=" + fmt_g(a.nbar_min) +
                                  " max=" + fmt_g(a.nbar_max) +
                                  " steps=" + std::to_string(a.steps) +
                                  " literal=" + std::to_string(a.paper_literal);
    const std::string hash = hash_hex(canonical);
    const auto grid =
        linspace(1e-3, kTwoPi - 1e-3, a.phi_points); // endpoints carry P in {0,1}

    const std::string csv_path = out_path(a.out_dir, "sensitivity.csv");
    CsvWriter w(csv_path, hash);
    w.header({"kind", "mean_n", "delta_phi", "cr_bound", "db_vs_sql"});
    ordered_json reports = ordered_json::array();
    for (CircuitKind k : kinds)
        for (double n : linspace(a.nbar_min, a.nbar_max, a.steps)) {
            FringeModel m;
            m.kind = k;
            m.kernel =
                a.paper_literal ? SeriesKernel::printed_cosine : SeriesKernel::probability;
            m.beta = a.beta;
            switch (k) {
                case CircuitKind::su2: m.state_param = std::sqrt(n); break;
                case CircuitKind::su11_single:
                    m.state_param = 2.0 * std::asinh(std::sqrt(n));
                    break;
                case CircuitKind::su11_two:
                    m.state_param = 2.0 * std::asinh(std::sqrt(0.5 * n));
                    break;
            }
            const SensitivityReport rep = max_sensitivity(
                m, grid, !a.no_optimize_beta, 0.15, 3.1, static_cast<int>(a.beta_points));
            w.row({to_string(k), fmt_g(rep.mean_n), fmt_g(rep.delta_phi),
                   fmt_g(rep.cr_bound), fmt_g(rep.db_vs_sql)});
            reports.push_back(report_to_json(rep));
        }
    ordered_json j;
    j["tool"] = provenance_json(hash);
    j["reports"] = reports;
    const std::string json_path = out_path(a.out_dir, "sensitivity.json");
    write_json(json_path, j);
    std::cout << csv_path << "\n" << json_path << "\n";
    return kOk;
}

struct FitFringeArgs {
    std::string data_path;
    std::string kind = "su11_two";
    double beta = kTwoPi / 4.0;
    bool paper_literal = false;
    std::string out_dir;
};

inline int cmd_fit_fringe(const FitFringeArgs& a) {
    FringeDataset ds = read_fringe_csv(a.data_path);
    ds.program.kind = parse_circuit_kind(a.kind);
    ds.program.readout.beta = a.beta;
    const FitResult fit = fit_fringe(
        ds, ds.program.kind,
        a.paper_literal ? SeriesKernel::printed_cosine : SeriesKernel::probability);
    std::ifstream f(a.data_path);
    std::stringstream ss;
    ss << f.rdbuf();
    ordered_json j;
    j["tool"] = provenance_json(hash_hex(ss.str()));
    j["kind"] = a.kind;
    j["beta"] = a.beta;
    j["fit"] = fit_result_to_json(fit);
    const std::string path = out_path(a.out_dir, "fit_fringe.json");
    write_json(path, j);
    std::cout << j.dump(2) << "\n" << path << "\n";
    return kOk;
}

struct FitFockArgs {
    std::string data_path;
    int n_max = 8;
    double omega_sb = 0.0;
    bool offres = false;
    double eta_a = 0.1, eta_b = 0.1;
    double omega_carrier = 0.0;
    double delta1 = 0.0, delta2 = 0.0;
    int n_max_b = 4;
    std::string sideband = "blue";
    std::string strategy = "joint";
    std::string out_dir;
};

inline int cmd_fit_fock(const FitFockArgs& a) {
    const RabiDataset ds = read_rabi_csv(a.data_path);
    std::ifstream f(a.data_path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string hash = hash_hex(ss.str());

    FitResult fit;
    std::vector<double> model_curve(ds.times.size(), 0.0);
    std::string model_name;
    if (!a.offres) {
        if (!(a.omega_sb > 0)) throw ConfigError("fit-fock: --omega-sb required");
        fit = fit_fock_populations(ds, a.n_max, a.omega_sb);
        std::vector<double> pops(fit.params.data(), fit.params.data() + a.n_max + 1);
        model_curve = rabi_signal(pops, a.omega_sb, ds.times);
        model_name = "fitted_populations";
    } else {
        if (!(a.omega_carrier > 0))
            throw ConfigError("fit-fock --offres: --omega-carrier required");
        const SidebandConfig cfg(a.eta_a, a.eta_b, a.omega_carrier, a.delta1, a.delta2);
        const SidebandKind kind =
            (a.sideband == "red") ? SidebandKind::red : SidebandKind::blue;
        const OffresFitStrategy strat = (a.strategy == "sweep")
                                            ? OffresFitStrategy::single_index_sweep
                                            : OffresFitStrategy::joint;
        fit = fit_fock_populations_offres(ds, cfg, a.n_max, a.n_max_b, kind, strat);
        const auto curves = offres_basis_curves(cfg, ds.times, a.n_max, a.n_max_b, kind);
        for (std::size_t i = 0; i < ds.times.size(); ++i)
            for (int na = 0; na <= a.n_max; ++na)
                for (int nb = 0; nb <= a.n_max_b; ++nb)
                    model_curve[i] += fit.param("Pa" + std::to_string(na)) *
                                      fit.param("Pb" + std::to_string(nb)) *
                                      curves[na][nb][i];
        model_name = "fitted_populations_offres";
    }

    ordered_json j;
    j["tool"] = provenance_json(hash);
    j["offres"] = a.offres;
    j["fit"] = fit_result_to_json(fit);
    const std::string path = out_path(a.out_dir, "fit_fock.json");
    write_json(path, j);
    const std::string curve_path = out_path(a.out_dir, "fit_fock_curve.csv");
    write_curve_csv(curve_path, "t_seconds", ds.times, model_curve, model_name, hash);
    std::cout << j.dump(2) << "\n" << path << "\n" << curve_path << "\n";
    return kOk;
}

struct CalibrateBsArgs {
    double alpha0 = 2.0;
    double beta = kTwoPi / 4.0;
    double mix_min = 0.3, mix_max = 1.2;
    long points = 19;
    long phi_points = 17;
    std::string out_dir;
};

inline int cmd_calibrate_bs(const CalibrateBsArgs& a) {
    if (a.points < 3) throw ConfigError("calibrate-bs: need --points >= 3");
    const auto contrast =
        su2_contrast_evaluator(a.alpha0, a.beta, static_cast<int>(a.phi_points));
    const CalibrationResult res =
        calibrate_beamsplitter(contrast, linspace(a.mix_min, a.mix_max, a.points));

    // Full-transfer check: two calibrated pulses swap a coherent state.
    const int n = default_n_max(a.alpha0 * a.alpha0);
    const Truncation trunc(n, n, 1e-6);
    auto s = displacement(make_vacuum(trunc), cplx(a.alpha0, 0.0), Mode::a);
    s = beamsplitter(s, res.amplitude, 0.0);
    s = beamsplitter(s, res.amplitude, 0.0);
    const double residual_a = number_stats(s, Marginal::mode_a).mean;

    const std::string canonical = "calibrate-bs alpha0=" + fmt_g(a.alpha0) +
                                  " beta=" + fmt_g(a.beta) + " grid=" + fmt_g(a.mix_min) +
                                  ":" + fmt_g(a.mix_max) + ":" + std::to_string(a.points);
    ordered_json j;
    j["tool"] = provenance_json(hash_hex(canonical));
    j["mix_angle"] = res.amplitude;
    j["contrast"] = res.contrast;
    j["on_boundary"] = res.on_boundary;
    j["fifty_fifty_target"] = kTwoPi / 8.0;
    j["full_swap_residual_nbar_a"] = residual_a;
    const std::string path = out_path(a.out_dir, "calibrate_bs.json");
    write_json(path, j);
    std::cout << j.dump(2) << "\n" << path << "\n";
    return kOk;
}

} // namespace detail

/// Entry point shared by the binary and the tests: argv-style arguments
/// without the program name.
inline int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"two-mode interferometry simulator and metrology toolkit"};
    app.require_subcommand(1);

    detail::FringeArgs fringe_args;
    auto* fringe = app.add_subcommand("fringe", "simulate an interferometer phase fringe");
    fringe->add_option("-c,--config", fringe_args.config_path, "experiment config file")
        ->required();
    fringe->add_option("-o,--out", fringe_args.out_dir, "output directory");
    fringe->add_option("--engine", fringe_args.engine, "sim | model");
    fringe->add_flag("--paper-literal", fringe_args.paper_literal,
                     "printed-cosine readout series (model engine)");

    detail::BoundsArgs bounds_args;
    auto* bounds = app.add_subcommand("bounds", "tabulate ideal phase bounds");
    bounds->add_option("--kind", bounds_args.kind, "su2 | su11_single | su11_two | all");
    bounds->add_option("--nbar", bounds_args.nbar, "single mean phonon number");
    bounds->add_option("--nbar-min", bounds_args.nbar_min, "sweep start");
    bounds->add_option("--nbar-max", bounds_args.nbar_max, "sweep stop");
    bounds->add_option("--steps", bounds_args.steps, "sweep points");
    bounds->add_option("-o,--out", bounds_args.out_dir, "output directory");

    detail::VerifyTmsArgs verify_args;
    auto* verify = app.add_subcommand("verify-tms",
                                      "two-mode squeezing verification protocol");
    verify->add_option("--nbar", verify_args.nbar, "target thermal occupation")->required();
    verify->add_option("--n-max", verify_args.n_max, "Fock cutoff per mode");
    verify->add_option("-o,--out", verify_args.out_dir, "output directory");

    detail::SensitivityArgs sens_args;
    auto* sens = app.add_subcommand("sensitivity", "sweep ideal fringe sensitivities");
    sens->add_option("--kind", sens_args.kind, "su2 | su11_single | su11_two | all");
    sens->add_option("--nbar-min", sens_args.nbar_min, "probe size sweep start");
    sens->add_option("--nbar-max", sens_args.nbar_max, "probe size sweep stop");
    sens->add_option("--steps", sens_args.steps, "sweep points");
    sens->add_option("--phi-points", sens_args.phi_points, "phase grid size");
    sens->add_option("--beta-points", sens_args.beta_points, "readout pulse grid size");
    sens->add_option("--beta", sens_args.beta, "fixed readout pulse area");
    sens->add_flag("--no-optimize-beta", sens_args.no_optimize_beta,
                   "use --beta instead of optimizing");
    sens->add_flag("--paper-literal", sens_args.paper_literal,
                   "printed-cosine readout series");
    sens->add_option("-o,--out", sens_args.out_dir, "output directory");

    detail::FitFringeArgs ff_args;
    auto* ff = app.add_subcommand("fit-fringe", "fit a fringe dataset");
    ff->add_option("--data", ff_args.data_path, "fringe CSV (phi_rad,p_down[,shots])")
        ->required();
    ff->add_option("--kind", ff_args.kind, "su2 | su11_single | su11_two")->required();
    ff->add_option("--beta", ff_args.beta, "readout pulse area of the dataset");
    ff->add_flag("--paper-literal", ff_args.paper_literal, "printed-cosine readout series");
    ff->add_option("-o,--out", ff_args.out_dir, "output directory");

    detail::FitFockArgs fk_args;
    auto* fk = app.add_subcommand("fit-fock", "trace-preserving Fock population fit");
    fk->add_option("--data", fk_args.data_path, "Rabi CSV (t_seconds,p_down[,shots])")
        ->required();
    fk->add_option("--n-max", fk_args.n_max, "highest fitted Fock level");
    fk->add_option("--omega-sb", fk_args.omega_sb, "sideband Rabi rate (rad/s)");
    fk->add_flag("--offres", fk_args.offres, "use the off-resonant two-mode forward model");
    fk->add_option("--eta-a", fk_args.eta_a, "Lamb-Dicke parameter, mode a");
    fk->add_option("--eta-b", fk_args.eta_b, "Lamb-Dicke parameter, mode b");
    fk->add_option("--omega-carrier", fk_args.omega_carrier, "carrier Rabi rate (rad/s)");
    fk->add_option("--delta1", fk_args.delta1, "mode-a sideband detuning (rad/s)");
    fk->add_option("--delta2", fk_args.delta2, "mode-b sideband detuning (rad/s)");
    fk->add_option("--n-max-b", fk_args.n_max_b, "highest fitted level of the other mode");
    fk->add_option("--sideband", fk_args.sideband, "blue | red");
    fk->add_option("--strategy", fk_args.strategy, "joint | sweep");
    fk->add_option("-o,--out", fk_args.out_dir, "output directory");

    detail::CalibrateBsArgs cb_args;
    auto* cb = app.add_subcommand("calibrate-bs", "50/50 beamsplitter amplitude calibration");
    cb->add_option("--alpha0", cb_args.alpha0, "probe displacement");
    cb->add_option("--beta", cb_args.beta, "readout pulse area");
    cb->add_option("--mix-min", cb_args.mix_min, "amplitude grid start");
    cb->add_option("--mix-max", cb_args.mix_max, "amplitude grid stop");
    cb->add_option("--points", cb_args.points, "amplitude grid size");
    cb->add_option("--phi-points", cb_args.phi_points, "fringe grid for contrast");
    cb->add_option("-o,--out", cb_args.out_dir, "output directory");

    std::vector<const char*> argv;
    argv.push_back("tmsim");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help() << std::flush;
            return kOk;
        }
        detail::emit_error(kConfig, "usage", e.what());
        return kConfig;
    }

    try {
        if (*fringe) return detail::cmd_fringe(fringe_args);
        if (*bounds) return detail::cmd_bounds(bounds_args);
        if (*verify) return detail::cmd_verify_tms(verify_args);
        if (*sens) return detail::cmd_sensitivity(sens_args);
        if (*ff) return detail::cmd_fit_fringe(ff_args);
        if (*fk) return detail::cmd_fit_fock(fk_args);
        if (*cb) return detail::cmd_calibrate_bs(cb_args);
        detail::emit_error(kConfig, "usage", "no subcommand given");
        return kConfig;
    } catch (const ConfigError& e) {
        detail::emit_error(kConfig, "config", e.what());
        return kConfig;
    } catch (const TruncationError& e) {
        detail::emit_error(kTruncation, "truncation", e.what());
        return kTruncation;
    } catch (const ConvergenceError& e) {
        detail::emit_error(kConvergence, "convergence", e.what());
        return kConvergence;
    } catch (const Error& e) {
        detail::emit_error(kData, "data", e.what());
        return kData;
    } catch (const std::exception& e) {
        detail::emit_error(kOther, "internal", e.what());
        return kOther;
    }
}

} // namespace tmsim::cli
