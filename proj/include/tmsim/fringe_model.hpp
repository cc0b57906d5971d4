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

#include "tmsim/errors.hpp"
#include "tmsim/interferometer.hpp"
#include "tmsim/sideband.hpp"

namespace tmsim {

// ---------------------------------------------------------------------------
// Closed-form fringe models for red-sideband readout, matching the simulated
// circuits point by point:
//
//   su2:          alpha(phi) = alpha0 cos((phi - phi0)/2), Poisson weights
//   su11_single:  v(phi) = sinh^2(r0) cos^2((phi - phi0)/2), squeezed weights
//   su11_two:     lambda(phi) = sinh^2(r0) cos^2((phi - phi0)/2), thermal weights
//
// P(down) = v0 + 1 - <X>, with <X> the spin-survival series from sideband.hpp.
// Both the value and the analytic phase derivative are exposed; these feed
// the fringe fits and the Fisher-information profiles.
// ---------------------------------------------------------------------------

struct FringeModel {
    CircuitKind kind = CircuitKind::su11_single;
    double state_param = 0.0; // alpha0 or r0 (constructive-total convention)
    double phi0 = 0.0;
    double v0 = 0.0;
    double beta = kTwoPi / 4.0;
    SeriesKernel kernel = SeriesKernel::probability;
    int n_terms = 0; // 0 = choose automatically from the state size

    static FringeModel from_program(const CircuitProgram& p,
                                    SeriesKernel kernel = SeriesKernel::probability) {
        if (p.readout.kind != SidebandKind::red || p.readout.mode != Mode::a)
            throw DomainError("FringeModel: analytic models cover red readout of mode a");
        FringeModel m;
        m.kind = p.kind;
        m.state_param = p.state_param;
        m.phi0 = p.phi0;
        m.v0 = p.v0;
        m.beta = p.readout.beta;
        m.kernel = kernel;
        return m;
    }

    int terms() const {
        if (n_terms > 0) return n_terms;
        switch (kind) {
            case CircuitKind::su2: {
                const double mu = state_param * state_param;
                return static_cast<int>(std::ceil(mu + 12.0 * std::sqrt(mu + 1.0) + 16));
            }
            case CircuitKind::su11_single: {
                const double v = std::pow(std::sinh(state_param), 2);
                return thermal_series_terms(v) + 8; // terms count pairs 2m
            }
            case CircuitKind::su11_two: {
                const double lam = std::pow(std::sinh(state_param), 2);
                return thermal_series_terms(lam);
            }
        }
        return 64;
    }

    double probe_mean_n() const {
        CircuitProgram p;
        p.kind = kind;
        p.state_param = state_param;
        return p.probe_mean_n();
    }

    /// P(down) at program phase phi.
    double p_down(double phi) const { return eval(phi).value; }

    /// dP(down)/dphi at program phase phi.
    double dp_dphi(double phi) const { return eval(phi).d_dparam; }

    /// {P(down), dP(down)/dphi} in one pass. The transfer probability is
    /// accumulated directly (sin^2 kernels), so dark-fringe values stay
    /// accurate where the survival series would cancel to 1 - epsilon.
    SeriesValue eval(double phi) const {
        const double x = phi - phi0;
        const auto sv = transfer_series(x);
        SeriesValue out;
        out.value = v0 + sv.value;
        out.d_dparam = sv.d_dparam * param_dphi(x);
        return out;
    }

    /// dP(down)/d(state_param) at program phase phi, for fit Jacobians.
    double dp_dstate(double phi) const {
        const double x = phi - phi0;
        const auto sv = transfer_series(x);
        const double c = std::cos(0.5 * x);
        switch (kind) {
            case CircuitKind::su2: return sv.d_dparam * std::abs(c);
            case CircuitKind::su11_single:
            case CircuitKind::su11_two:
                return sv.d_dparam * std::sinh(2.0 * state_param) * c * c;
        }
        return 0.0;
    }

  private:
    // Transfer probability and its derivative with respect to the family
    // parameter (alpha for su2, v = lambda = sinh^2 r(phi) for the squeezer
    // kinds) at phase offset x.
    SeriesValue transfer_series(double x) const {
        const double c = std::cos(0.5 * x);
        const int nt = terms();
        detail::ReadoutEval ev;
        switch (kind) {
            case CircuitKind::su2: {
                const double alpha = state_param * std::abs(c);
                // The published coherent-state series already carries the
                // squared kernel, so the literal and probability forms agree.
                ev = detail::readout_series(detail::WeightFamily::poisson, alpha, beta, nt,
                                            SeriesKernel::probability);
                break;
            }
            case CircuitKind::su11_single: {
                const double v = std::pow(std::sinh(state_param) * c, 2);
                ev = detail::readout_series(detail::WeightFamily::squeezed, v, beta, nt,
                                            kernel);
                break;
            }
            case CircuitKind::su11_two: {
                const double lam = std::pow(std::sinh(state_param) * c, 2);
                ev = detail::readout_series(detail::WeightFamily::thermal, lam, beta, nt,
                                            kernel);
                break;
            }
        }
        return {ev.transfer, ev.d_transfer};
    }

    // d(family parameter)/dphi at phase offset x.
    double param_dphi(double x) const {
        const double c = std::cos(0.5 * x);
        switch (kind) {
            case CircuitKind::su2:
                // alpha = alpha0 |cos(x/2)|; d|c|/dx carries the sign of c.
                return -0.5 * state_param * std::sin(0.5 * x) * (c < 0 ? -1.0 : 1.0);
            case CircuitKind::su11_single:
            case CircuitKind::su11_two:
                return -0.5 * std::pow(std::sinh(state_param), 2) * std::sin(x);
        }
        return 0.0;
    }
};

} // namespace tmsim
