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
#include <optional>
#include <random>
#include <vector>

#include "tmsim/errors.hpp"
#include "tmsim/fock.hpp"
#include "tmsim/gates.hpp"
#include "tmsim/sideband.hpp"

namespace tmsim {

// ---------------------------------------------------------------------------
// Interferometer circuits.
//
// Phase convention, shared by all three kinds: the program phase phi enters
// the drive phase of the second pulse such that phi = 0 is the constructive
// point (largest intermediate state) and phi = pi is the full time reversal.
//
//   su11_single:  S_a(r0/2, 0)  -> S_a(r0/2, phi)        -> readout
//   su11_two:     TMS(r0/2, 0)  -> TMS(r0/2, phi)        -> readout
//   su2:          D_a(alpha0) -> BS(pi/4, 0) -> BS(pi/4, pi + phi) -> readout
//
// r0 is the squeeze magnitude reached at the constructive phase; each of the
// two squeezer pulses carries r0/2 (two equal pulses compose to a squeeze of
// twice the pulse magnitude at matched phase). The intermediate squeeze
// parameter obeys sinh r(phi) = sinh(r0) cos(phi/2) and the mode-a coherent
// amplitude of the su2 circuit obeys alpha(phi) = alpha0 cos(phi/2). For the
// beamsplitter pair the roles of "same phase" and "opposite phase" are
// swapped (two identical 50/50 pulses compose to a full transfer), hence the
// extra pi on the second beamsplitter.
// ---------------------------------------------------------------------------

enum class CircuitKind { su2, su11_single, su11_two };

inline const char* to_string(CircuitKind k) {
    switch (k) {
        case CircuitKind::su2: return "su2";
        case CircuitKind::su11_single: return "su11_single";
        case CircuitKind::su11_two: return "su11_two";
    }
    return "?";
}

struct Readout {
    Mode mode = Mode::a;
    SidebandKind kind = SidebandKind::red;
    double beta = kTwoPi / 4.0; // pulse area eta*Omega*t/2
};

/// Fock range that keeps the geometric tail of a thermal-like envelope with
/// ratio q = nbar/(1+nbar) below tail_tol.
inline int thermal_n_max(double nbar, double tail_tol = 1e-9) {
    if (nbar <= 0) return 4;
    const double q = nbar / (1.0 + nbar);
    const int n = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(q)));
    return std::max(n, 4);
}

/// One interferometer: kind, input size, readout pulse, and the fit-only
/// fringe offsets. phi0 shifts the phase axis and v0 adds a baseline to
/// P(down); both default to zero, in which case the circuit is ideal.
struct CircuitProgram {
    CircuitKind kind = CircuitKind::su11_single;
    double state_param = 0.0; // alpha0 (su2) or r0 (su11 kinds)
    Readout readout{};
    double phi0 = 0.0;
    double v0 = 0.0;
    std::optional<Truncation> truncation{};

    void validate() const {
        if (state_param < 0) throw DomainError("CircuitProgram: state parameter must be >= 0");
        if (v0 < 0 || v0 >= 1) throw DomainError("CircuitProgram: v0 must lie in [0, 1)");
        if (readout.beta < 0) throw DomainError("CircuitProgram: readout beta must be >= 0");
    }

    /// Mean phonon number of the probe state entering the phase stage:
    /// alpha0^2 for su2, sinh^2(r0/2) per mode for the squeezer circuits
    /// (total 2 sinh^2(r0/2) for the two-mode kind).
    double probe_mean_n() const {
        const double s = state_param;
        switch (kind) {
            case CircuitKind::su2: return s * s;
            case CircuitKind::su11_single: return std::pow(std::sinh(0.5 * s), 2);
            case CircuitKind::su11_two: return 2.0 * std::pow(std::sinh(0.5 * s), 2);
        }
        return 0.0;
    }

    Truncation effective_truncation() const {
        if (truncation) return *truncation;
        const double s = state_param;
        switch (kind) {
            case CircuitKind::su2: {
                const int n = default_n_max(s * s);
                return Truncation(n, n, 1e-6);
            }
            case CircuitKind::su11_single: {
                // Squeezed-vacuum tails fall like tanh^(n) r0, twice as slowly
                // per level as a thermal state of the same mean.
                const double nbar = std::pow(std::sinh(s), 2);
                return Truncation(std::max(2 * thermal_n_max(nbar), 8), 1, 1e-6);
            }
            case CircuitKind::su11_two: {
                const double nbar = std::pow(std::sinh(s), 2);
                const int n = thermal_n_max(nbar);
                return Truncation(n, n, 1e-6);
            }
        }
        return Truncation(8, 8, 1e-6);
    }
};

struct FringePoint {
    double phi = 0.0;
    double p_down = 0.0;
    long shots = 0; // 0 = exact probability
};

struct FringeDataset {
    std::vector<FringePoint> points;
    CircuitProgram program;
    std::uint64_t seed = 0;
};

struct CircuitResult {
    TwoModeQubitState before_readout;
    TwoModeQubitState after_readout;
    double p_down = 0.0;
};

/// Intermediate squeeze parameter of a squeezer pair driven with relative
/// phase phi: r(phi) = asinh(sinh(r0) cos(phi/2)).
inline double tms_phase_param(double r0, double phi) {
    if (r0 < 0) throw DomainError("tms_phase_param: r0 must be nonnegative");
    return std::asinh(std::sinh(r0) * std::cos(0.5 * phi));
}

/// Beamsplitter delay phase phi = (omega_a - omega_b) t_delay, wrapped into
/// [0, 2 pi).
inline double delay_to_phase(double t_delay, const ModeConfig& modes) {
    if (t_delay < 0) throw DomainError("delay_to_phase: negative delay");
    double phi = std::fmod((modes.omega_a - modes.omega_b) * t_delay, kTwoPi);
    if (phi < 0) phi += kTwoPi;
    return phi;
}

/// Runs the circuit at program phase phi and returns the pre-readout state,
/// the post-readout state, and P(down) (including the v0 baseline).
inline CircuitResult run_circuit_detail(const CircuitProgram& program, double phi) {
    program.validate();
    const Truncation trunc = program.effective_truncation();
    const double x = phi - program.phi0;
    TwoModeQubitState state = make_vacuum(trunc, Spin::up);
    switch (program.kind) {
        case CircuitKind::su2:
            state = displacement(state, cplx(program.state_param, 0.0), Mode::a);
            state = beamsplitter(state, kTwoPi / 8.0, 0.0);
            state = beamsplitter(state, kTwoPi / 8.0, kTwoPi / 2.0 + x);
            break;
        case CircuitKind::su11_single:
            state = single_mode_squeeze(state, 0.5 * program.state_param, 0.0, Mode::a);
            state = single_mode_squeeze(state, 0.5 * program.state_param, x, Mode::a);
            break;
        case CircuitKind::su11_two:
            state = two_mode_squeeze(state, 0.5 * program.state_param, 0.0);
            state = two_mode_squeeze(state, 0.5 * program.state_param, x);
            break;
    }
    CircuitResult res{state, state, 0.0};
    res.after_readout = detail::sideband_pulse_area(state, program.readout.beta,
                                                    program.readout.kind, program.readout.mode);
    res.p_down = program.v0 + spin_down_probability(res.after_readout);
    return res;
}

inline double run_circuit(const CircuitProgram& program, double phi) {
    return run_circuit_detail(program, phi).p_down;
}

/// Exact or shot-sampled fringe over a phase grid. Sampling is binomial with
/// `shots` per point, reproducible for a fixed seed.
inline FringeDataset sweep_fringe(const CircuitProgram& program,
                                  const std::vector<double>& phi_grid, long shots = 0,
                                  std::uint64_t seed = 0) {
    if (phi_grid.empty()) throw DataError("sweep_fringe: empty phase grid");
    for (std::size_t i = 1; i < phi_grid.size(); ++i)
        if (!(phi_grid[i] > phi_grid[i - 1]))
            throw DataError("sweep_fringe: phase grid must be strictly increasing");
    FringeDataset ds;
    ds.program = program;
    ds.seed = seed;
    std::mt19937_64 rng(seed);
    for (double phi : phi_grid) {
        FringePoint pt;
        pt.phi = phi;
        const double p = std::clamp(run_circuit(program, phi), 0.0, 1.0);
        if (shots > 0) {
            std::binomial_distribution<long> dist(shots, p);
            pt.p_down = static_cast<double>(dist(rng)) / static_cast<double>(shots);
            pt.shots = shots;
        } else {
            pt.p_down = p;
            pt.shots = 0;
        }
        ds.points.push_back(pt);
    }
    return ds;
}

} // namespace tmsim
