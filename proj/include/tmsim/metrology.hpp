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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tmsim/errors.hpp"
#include "tmsim/fock.hpp"
#include "tmsim/fringe_model.hpp"

namespace tmsim {

// ---------------------------------------------------------------------------
// Fisher information, Cramer-Rao bounds, and sensitivity extraction.
//
// dB convention: db_vs_sql = 20 log10(delta_phi * sqrt(mean_n)), i.e. the
// amplitude ratio to the standard quantum limit 1/sqrt(mean_n) (equivalently
// 10 log10 of the variance ratio). Negative values beat the SQL.
// ---------------------------------------------------------------------------

/// Cramer-Rao phase bound for an ideal probe of the given mean phonon number:
///   su2:          1/sqrt(N)
///   su11_single:  1/sqrt(8 N (N + 1))
///   su11_two:     1/sqrt(N (2 + N))
inline double cr_bound(CircuitKind kind, double mean_n) {
    if (!(mean_n > 0)) throw DomainError("cr_bound: mean_n must be positive");
    switch (kind) {
        case CircuitKind::su2: return 1.0 / std::sqrt(mean_n);
        case CircuitKind::su11_single:
            return 1.0 / std::sqrt(8.0 * mean_n * (mean_n + 1.0));
        case CircuitKind::su11_two:
            return 1.0 / std::sqrt(mean_n * (2.0 + mean_n));
    }
    throw DomainError("cr_bound: unknown interferometer kind");
}

enum class PhaseGenerator { number_a, number_b, number_total };

/// Quantum Fisher information of a pure probe state for a number-operator
/// phase generator: 4 x Var(N).
inline double qfi_from_state(const TwoModeQubitState& state, PhaseGenerator gen) {
    Marginal which = Marginal::total;
    if (gen == PhaseGenerator::number_a) which = Marginal::mode_a;
    if (gen == PhaseGenerator::number_b) which = Marginal::mode_b;
    return 4.0 * number_stats(state, which).variance;
}

/// Binary-outcome classical Fisher information F = (dP/dphi)^2 / (P (1-P)).
/// Undefined at P in {0, 1}; signalled, not clamped.
inline double classical_fisher(double p_down, double dp_dphi) {
    if (!(p_down > 0.0) || !(p_down < 1.0))
        throw DomainError("classical_fisher: P(down) must lie strictly inside (0, 1)");
    return dp_dphi * dp_dphi / (p_down * (1.0 - p_down));
}

/// F(phi) of a fringe model over a phase grid. Propagates the domain error of
/// classical_fisher if the model pins P(down) to 0 or 1 on the grid.
inline std::vector<double> fringe_fisher_profile(const FringeModel& model,
                                                 const std::vector<double>& phi_grid) {
    std::vector<double> f;
    f.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        const SeriesValue sv = model.eval(phi);
        f.push_back(classical_fisher(sv.value, sv.d_dparam));
    }
    return f;
}

/// Golden-section maximization of a unimodal function on [a, b].
inline double golden_section_max(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-6) {
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct SensitivityReport {
    CircuitKind kind = CircuitKind::su11_single;
    double mean_n = 0.0;    // probe mean phonon number
    double delta_phi = 0.0; // best achieved 1/sqrt(max F)
    double phi_at_best = 0.0;
    double cr_bound = 0.0;
    double sql = 0.0;
    double db_vs_sql = 0.0;
    double beta_used = 0.0;
};

/// dB of a phase uncertainty relative to the SQL of the same resource count.
inline double db_vs_sql(double delta_phi, double mean_n) {
    if (!(delta_phi > 0) || !(mean_n > 0))
        throw DomainError("db_vs_sql: inputs must be positive");
    return 20.0 * std::log10(delta_phi * std::sqrt(mean_n));
}

namespace detail {

// Max of F(phi) over the grid plus a golden-section refinement around the
// grid argmax. Grid points where P(down) hits 0 or 1 carry no usable signal
// and are skipped; F extends continuously past them.
struct FisherMax {
    double f = 0.0;
    double phi = 0.0;
};

inline FisherMax fisher_max_over_phi(const FringeModel& model,
                                     const std::vector<double>& phi_grid) {
    auto safe_f = [&](double phi) {
        const SeriesValue sv = model.eval(phi);
        if (!(sv.value > 0.0) || !(sv.value < 1.0))
            return -std::numeric_limits<double>::infinity();
        return sv.d_dparam * sv.d_dparam / (sv.value * (1.0 - sv.value));
    };
    FisherMax best;
    best.f = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
        const double f = safe_f(phi_grid[i]);
        if (f > best.f) {
            best.f = f;
            best.phi = phi_grid[i];
            best_i = i;
        }
    }
    if (!std::isfinite(best.f) || best.f <= 0.0) return {0.0, best.phi};
    const double lo = phi_grid[best_i > 0 ? best_i - 1 : 0];
    const double hi = phi_grid[best_i + 1 < phi_grid.size() ? best_i + 1 : best_i];
    if (hi > lo) {
        const double phi_star = golden_section_max(safe_f, lo, hi, 1e-6);
        const double f_star = safe_f(phi_star);
        if (f_star > best.f) {
            best.f = f_star;
            best.phi = phi_star;
        }
    }
    return best;
}

} // namespace detail

/// Extracts the sensitivity of a fringe: delta_phi = 1/sqrt(max_phi F(phi)),
/// optionally optimizing the readout pulse area beta over a bounded grid
/// (with golden-section refinement) first.
inline SensitivityReport max_sensitivity(const FringeModel& model,
                                         const std::vector<double>& phi_grid,
                                         bool optimize_beta = false, double beta_lo = 0.15,
                                         double beta_hi = 3.1, int beta_points = 25) {
    if (phi_grid.empty()) throw DataError("max_sensitivity: empty phase grid");
    if (!(model.state_param > 0))
        throw DomainError("max_sensitivity: degenerate model (zero-size state)");

    FringeModel work = model;
    if (optimize_beta) {
        auto fmax_at = [&](double beta) {
            FringeModel m = work;
            m.beta = beta;
            return detail::fisher_max_over_phi(m, phi_grid).f;
        };
        double best_beta = work.beta, best_f = -1.0;
        std::vector<double> betas(beta_points);
        for (int i = 0; i < beta_points; ++i)
            betas[i] = beta_lo + (beta_hi - beta_lo) * i / (beta_points - 1.0);
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            const double f = fmax_at(betas[i]);
            if (f > best_f) {
                best_f = f;
                best_beta = betas[i];
                best_i = i;
            }
        }
        const double lo = betas[best_i > 0 ? best_i - 1 : 0];
        const double hi = betas[best_i + 1 < betas.size() ? best_i + 1 : best_i];
        if (hi > lo) {
            const double refined = golden_section_max(fmax_at, lo, hi, 1e-5);
            if (fmax_at(refined) > best_f) best_beta = refined;
        }
        work.beta = best_beta;
    }

    const detail::FisherMax fm = detail::fisher_max_over_phi(work, phi_grid);
    if (!(fm.f > 0))
        throw DomainError("max_sensitivity: flat fringe carries no phase information");

    SensitivityReport rep;
    rep.kind = work.kind;
    rep.mean_n = work.probe_mean_n();
    rep.delta_phi = 1.0 / std::sqrt(fm.f);
    rep.phi_at_best = fm.phi;
    rep.cr_bound = cr_bound(work.kind, rep.mean_n);
    rep.sql = 1.0 / std::sqrt(rep.mean_n);
    rep.db_vs_sql = db_vs_sql(rep.delta_phi, rep.mean_n);
    rep.beta_used = work.beta;
    return rep;
}

} // namespace tmsim
