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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "tmsim/errors.hpp"
#include "tmsim/fock.hpp"

namespace tmsim {

// ---------------------------------------------------------------------------
// Qubit-motion coupling for readout.
//
// Conventions, fixed here once for the whole library:
//  * The qubit starts in |up>; readout measures P(down).
//  * Red sideband couples |up, n> <-> |down, n-1> at Rabi rate eta*Omega*sqrt(n),
//    blue couples |up, n> <-> |down, n+1> at eta*Omega*sqrt(n+1).
//  * With beta = eta*Omega*t/2 the transfer probability from |up, n> is
//    sin^2(beta sqrt(n)) (red) or sin^2(beta sqrt(n+1)) (blue), so P(down) = 0
//    at t = 0. Analytic series below use the matching cos^2 survival kernels.
// ---------------------------------------------------------------------------

enum class SidebandKind { red, blue };

/// Lamb-Dicke parameters, carrier Rabi rate, and the drive detunings from the
/// two sideband resonances (rad/s).
struct SidebandConfig {
    double eta_a = 0.1;
    double eta_b = 0.1;
    double omega_carrier = 0.0;
    double delta_1 = 0.0; // mode-a sideband detuning
    double delta_2 = 0.0; // mode-b sideband detuning

    SidebandConfig() = default;
    SidebandConfig(double eta_a, double eta_b, double omega_carrier, double delta_1 = 0.0,
                   double delta_2 = 0.0)
        : eta_a(eta_a), eta_b(eta_b), omega_carrier(omega_carrier), delta_1(delta_1),
          delta_2(delta_2) {
        if (!(eta_a > 0) || !(eta_b > 0))
            throw DomainError("SidebandConfig: Lamb-Dicke parameters must be positive");
        if (!(omega_carrier > 0))
            throw DomainError("SidebandConfig: carrier Rabi rate must be positive");
    }

    double eta(Mode m) const { return m == Mode::a ? eta_a : eta_b; }
};

/// Sideband drive resonant with `resonant` and detuned from the other mode by
/// the mode splitting.
inline SidebandConfig sideband_from_modes(double eta_a, double eta_b, double omega_carrier,
                                          const ModeConfig& modes, Mode resonant = Mode::a) {
    SidebandConfig cfg(eta_a, eta_b, omega_carrier);
    if (resonant == Mode::a) {
        cfg.delta_1 = 0.0;
        cfg.delta_2 = modes.omega_a - modes.omega_b;
    } else {
        cfg.delta_2 = 0.0;
        cfg.delta_1 = modes.omega_b - modes.omega_a;
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Exact resonant evolution
// ---------------------------------------------------------------------------

namespace detail {

/// Resonant sideband evolution parametrized directly by the pulse area
/// beta = eta*Omega*t/2. Each (spin, n) pair is a closed two-level block, so
/// the unitary is a collection of exact 2x2 rotations.
inline TwoModeQubitState sideband_pulse_area(const TwoModeQubitState& in, double beta,
                                             SidebandKind kind, Mode mode) {
    TwoModeQubitState s = in;
    auto& amp = s.amplitudes();
    const int da = s.dim_a(), db = s.dim_b();
    const int dm = (mode == Mode::a) ? da : db;
    const int denv = (mode == Mode::a) ? db : da;

    // Boundary guard: on the blue sideband the top Fock level has no partner
    // inside the truncation and is left frozen; refuse if it carries weight.
    if (kind == SidebandKind::blue) {
        double top = 0.0;
        for (int e = 0; e < denv; ++e)
            top += std::norm(mode == Mode::a ? s.at(Spin::up, dm - 1, e)
                                             : s.at(Spin::up, e, dm - 1));
        if (top > s.truncation().leak_tol)
            throw TruncationError("sideband_evolve: blue pulse would cross the Fock cutoff",
                                  top, s.truncation().leak_tol);
    }

    for (int e = 0; e < denv; ++e) {
        for (int n = 0; n < dm; ++n) {
            // Pair (up, n_up) <-> (down, n_down).
            int n_up, n_down;
            if (kind == SidebandKind::red) {
                n_up = n;
                n_down = n - 1;
                if (n_down < 0) continue;
            } else {
                n_up = n;
                n_down = n + 1;
                if (n_down >= dm) continue;
            }
            const double rabi = (kind == SidebandKind::red)
                                    ? std::sqrt(static_cast<double>(n_up))
                                    : std::sqrt(static_cast<double>(n_up + 1));
            const double chi = beta * rabi;
            const double c = std::cos(chi), sn = std::sin(chi);
            const std::size_t iu = (mode == Mode::a) ? s.index(Spin::up, n_up, e)
                                                     : s.index(Spin::up, e, n_up);
            const std::size_t id = (mode == Mode::a) ? s.index(Spin::down, n_down, e)
                                                     : s.index(Spin::down, e, n_down);
            const cplx au = amp[iu], ad = amp[id];
            amp[iu] = c * au - cplx(0, 1) * sn * ad;
            amp[id] = -cplx(0, 1) * sn * au + c * ad;
        }
    }
    return s;
}

} // namespace detail

/// Exact resonant red/blue sideband evolution for time t.
inline TwoModeQubitState sideband_evolve(const TwoModeQubitState& in,
                                         const SidebandConfig& cfg, double t,
                                         SidebandKind kind, Mode mode) {
    if (t < 0) throw DomainError("sideband_evolve: negative duration");
    const double beta = 0.5 * cfg.eta(mode) * cfg.omega_carrier * t;
    return detail::sideband_pulse_area(in, beta, kind, mode);
}

// ---------------------------------------------------------------------------
// Off-resonant two-mode sideband model
//
// H(t) = (Omega/2) [ eta_a (J C_a e^{i d1 t} + h.c.) + eta_b (J C_b e^{i d2 t} + h.c.) ]
// with J = |down><up| and C = a^dag (blue) or a (red). Integrated with
// fixed-step RK4; a full step-halving rerun bounds the error.
// ---------------------------------------------------------------------------

namespace detail {

struct OffresWorkspace {
    std::vector<cplx> k1, k2, k3, k4, tmp;
};

// y <- -i H(t) x
inline void offres_rhs(const TwoModeQubitState& shape, const SidebandConfig& cfg,
                       SidebandKind kind, double t, const std::vector<cplx>& x,
                       std::vector<cplx>& y) {
    const int da = shape.dim_a(), db = shape.dim_b();
    const double ka = 0.5 * cfg.eta_a * cfg.omega_carrier;
    const double kb = 0.5 * cfg.eta_b * cfg.omega_carrier;
    const cplx z1 = std::polar(1.0, cfg.delta_1 * t);
    const cplx z2 = std::polar(1.0, cfg.delta_2 * t);
    const cplx mi(0.0, -1.0);
    std::fill(y.begin(), y.end(), cplx(0.0, 0.0));

    auto idx = [&](Spin q, int na, int nb) {
        return (static_cast<std::size_t>(q) * da + na) * db + nb;
    };
    for (int na = 0; na < da; ++na)
        for (int nb = 0; nb < db; ++nb) {
            const cplx up = x[idx(Spin::up, na, nb)];
            if (kind == SidebandKind::blue) {
                // J a^dag e^{i d t} + J^dag a e^{-i d t}
                if (na + 1 < da) {
                    const double m = ka * std::sqrt(static_cast<double>(na + 1));
                    y[idx(Spin::down, na + 1, nb)] += mi * m * z1 * up;
                    y[idx(Spin::up, na, nb)] +=
                        mi * m * std::conj(z1) * x[idx(Spin::down, na + 1, nb)];
                }
                if (nb + 1 < db) {
                    const double m = kb * std::sqrt(static_cast<double>(nb + 1));
                    y[idx(Spin::down, na, nb + 1)] += mi * m * z2 * up;
                    y[idx(Spin::up, na, nb)] +=
                        mi * m * std::conj(z2) * x[idx(Spin::down, na, nb + 1)];
                }
            } else {
                // J a e^{i d t} + J^dag a^dag e^{-i d t}
                if (na >= 1) {
                    const double m = ka * std::sqrt(static_cast<double>(na));
                    y[idx(Spin::down, na - 1, nb)] += mi * m * z1 * up;
                    y[idx(Spin::up, na, nb)] +=
                        mi * m * std::conj(z1) * x[idx(Spin::down, na - 1, nb)];
                }
                if (nb >= 1) {
                    const double m = kb * std::sqrt(static_cast<double>(nb));
                    y[idx(Spin::down, na, nb - 1)] += mi * m * z2 * up;
                    y[idx(Spin::up, na, nb)] +=
                        mi * m * std::conj(z2) * x[idx(Spin::down, na, nb - 1)];
                }
            }
        }
}

inline void rk4_step(const TwoModeQubitState& shape, const SidebandConfig& cfg,
                     SidebandKind kind, double t, double h, std::vector<cplx>& psi,
                     OffresWorkspace& w) {
    const std::size_t n = psi.size();
    offres_rhs(shape, cfg, kind, t, psi, w.k1);
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = psi[i] + 0.5 * h * w.k1[i];
    offres_rhs(shape, cfg, kind, t + 0.5 * h, w.tmp, w.k2);
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = psi[i] + 0.5 * h * w.k2[i];
    offres_rhs(shape, cfg, kind, t + 0.5 * h, w.tmp, w.k3);
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = psi[i] + h * w.k3[i];
    offres_rhs(shape, cfg, kind, t + h, w.tmp, w.k4);
    for (std::size_t i = 0; i < n; ++i)
        psi[i] += (h / 6.0) * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

// Integrate from 0 to t with fixed step <= h_max, recording P(down) at the
// (sorted) sample times.
inline std::vector<double> offres_integrate(TwoModeQubitState& s, const SidebandConfig& cfg,
                                            SidebandKind kind, const std::vector<double>& times,
                                            double h_max) {
    OffresWorkspace w;
    const std::size_t n = s.amplitudes().size();
    w.k1.resize(n);
    w.k2.resize(n);
    w.k3.resize(n);
    w.k4.resize(n);
    w.tmp.resize(n);
    std::vector<double> out;
    out.reserve(times.size());
    double t = 0.0;
    auto& psi = s.amplitudes();
    for (double target : times) {
        if (target < t - 1e-15)
            throw DataError("offres_integrate: sample times must be nondecreasing");
        while (t < target - 1e-15) {
            const double h = std::min(h_max, target - t);
            rk4_step(s, cfg, kind, t, h, psi, w);
            t += h;
        }
        out.push_back(spin_down_probability(s));
    }
    return out;
}

inline double offres_step_bound(const SidebandConfig& cfg) {
    const double scale = std::max({std::abs(cfg.delta_1), std::abs(cfg.delta_2),
                                   cfg.eta_a * cfg.omega_carrier,
                                   cfg.eta_b * cfg.omega_carrier});
    if (!(scale > 0)) throw DomainError("offres: zero frequency scale");
    return 1.0 / (50.0 * scale);
}

} // namespace detail

/// Evolution under the time-dependent two-mode sideband Hamiltonian from 0 to
/// t. The integration is accepted only if a step-halved rerun agrees in final
/// fidelity to `tol`; converges to the resonant single-mode evolution as the
/// mode splitting grows.
inline TwoModeQubitState sideband_evolve_offres(const TwoModeQubitState& in,
                                                const SidebandConfig& cfg, double t,
                                                SidebandKind kind, double tol = 1e-8) {
    if (t < 0) throw DomainError("sideband_evolve_offres: negative duration");
    TwoModeQubitState coarse = in, fine = in;
    if (t == 0.0) return coarse;
    const double h = detail::offres_step_bound(cfg);
    const std::vector<double> end{t};
    detail::offres_integrate(coarse, cfg, kind, end, h);
    detail::offres_integrate(fine, cfg, kind, end, 0.5 * h);
    cplx ov(0.0, 0.0);
    const auto& ac = coarse.amplitudes();
    const auto& af = fine.amplitudes();
    for (std::size_t i = 0; i < ac.size(); ++i) ov += std::conj(ac[i]) * af[i];
    const double disagreement = std::abs(1.0 - std::norm(ov));
    if (disagreement > tol)
        throw ConvergenceError("sideband_evolve_offres: step-halving disagreement " +
                               std::to_string(disagreement) + " exceeds tolerance");
    return fine;
}

/// P(down)(t) curve under the off-resonant Hamiltonian, one integration pass
/// over the sorted time grid (step-halving validated at the final time).
inline std::vector<double> offres_rabi_curve(const TwoModeQubitState& in,
                                             const SidebandConfig& cfg,
                                             std::vector<double> times, SidebandKind kind,
                                             double tol = 1e-8) {
    if (times.empty()) throw DataError("offres_rabi_curve: empty time grid");
    if (!std::is_sorted(times.begin(), times.end()))
        throw DataError("offres_rabi_curve: time grid must be sorted");
    const double h = detail::offres_step_bound(cfg);
    TwoModeQubitState coarse = in, fine = in;
    auto pc = detail::offres_integrate(coarse, cfg, kind, times, h);
    auto pf = detail::offres_integrate(fine, cfg, kind, times, 0.5 * h);
    cplx ov(0.0, 0.0);
    const auto& ac = coarse.amplitudes();
    const auto& af = fine.amplitudes();
    for (std::size_t i = 0; i < ac.size(); ++i) ov += std::conj(ac[i]) * af[i];
    if (std::abs(1.0 - std::norm(ov)) > tol)
        throw ConvergenceError("offres_rabi_curve: step-halving disagreement exceeds tolerance");
    return pf;
}

// ---------------------------------------------------------------------------
// Analytic readout series
// ---------------------------------------------------------------------------

/// Kernel used inside the analytic readout series. `probability` is the
/// physically consistent cos^2 survival kernel; `printed_cosine` evaluates
/// the plain-cosine variant of the published series for comparison.
enum class SeriesKernel { probability, printed_cosine };

/// P(down)(t) for a blue-sideband pulse on populations P(n):
/// P = 1/2 [1 - sum_n P(n) cos(Omega_sb sqrt(n+1) t)], so P(0) = 0.
inline std::vector<double> rabi_signal(const std::vector<double>& populations,
                                       double omega_sb, const std::vector<double>& times) {
    double tot = 0.0;
    for (double p : populations) {
        if (p < -1e-12) throw DataError("rabi_signal: negative population");
        tot += p;
    }
    if (std::abs(tot - 1.0) > 1e-6)
        throw DataError("rabi_signal: populations must sum to 1 (got " + std::to_string(tot) +
                        ")");
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        double acc = 0.0;
        for (std::size_t n = 0; n < populations.size(); ++n)
            acc += populations[n] *
                   std::cos(omega_sb * std::sqrt(static_cast<double>(n + 1)) * t);
        out.push_back(0.5 * (1.0 - acc / tot));
    }
    return out;
}

/// Value and parameter-derivative of a readout series.
struct SeriesValue {
    double value = 0.0;
    double d_dparam = 0.0;
};

namespace detail {

inline double readout_kernel(double x, SeriesKernel k) {
    const double c = std::cos(x);
    return k == SeriesKernel::probability ? c * c : c;
}

// Complement 1 - K evaluated without cancellation: sin^2(x) for the
// probability kernel, 2 sin^2(x/2) for the plain cosine.
inline double readout_kernel_complement(double x, SeriesKernel k) {
    if (k == SeriesKernel::probability) {
        const double s = std::sin(x);
        return s * s;
    }
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

enum class WeightFamily { thermal, poisson, squeezed };

struct ReadoutEval {
    double survival = 0.0;   // sum_n w_n K_n
    double transfer = 0.0;   // sum_n w_n (1 - K_n)
    double d_survival = 0.0; // d survival / d param
    double d_transfer = 0.0;
};

// Shared series evaluator over the three occupation families. `param` is the
// family parameter (thermal mean lambda, coherent amplitude alpha, or
// squeezed v = sinh^2 r); weights and their parameter derivatives run through
// overflow-safe recurrences, and the transfer sum is accumulated directly so
// it stays accurate when the survival approaches 1.
inline ReadoutEval readout_series(WeightFamily fam, double param, double beta, int n_terms,
                                  SeriesKernel kernel) {
    ReadoutEval out;
    double w = 0.0;
    const double p = param;
    switch (fam) {
        case WeightFamily::thermal: w = 1.0 / (1.0 + p); break;
        case WeightFamily::poisson: w = std::exp(-p * p); break;
        case WeightFamily::squeezed: w = 1.0 / std::sqrt(1.0 + p); break;
    }
    for (int n = 0; n < n_terms; ++n) {
        const double level = (fam == WeightFamily::squeezed) ? 2.0 * n : n;
        const double x = beta * std::sqrt(level);
        const double k = readout_kernel(x, kernel);
        const double kc = readout_kernel_complement(x, kernel);
        double dw = 0.0;
        switch (fam) {
            case WeightFamily::thermal:
                if (p < 1e-300)
                    dw = (n == 0) ? -1.0 : (n == 1 ? 1.0 : 0.0);
                else
                    dw = w * (n - p) / (p * (1.0 + p));
                break;
            case WeightFamily::poisson:
                dw = (n == 0) ? -2.0 * p * w
                              : w * (2.0 * n / std::max(p, 1e-300) - 2.0 * p);
                break;
            case WeightFamily::squeezed:
                if (p < 1e-300)
                    dw = (n == 0) ? -0.5 : (n == 1 ? 0.5 : 0.0);
                else
                    dw = w * (n - 0.5 * p) / (p * (1.0 + p));
                break;
        }
        out.survival += k * w;
        out.transfer += kc * w;
        out.d_survival += k * dw;
        out.d_transfer += kc * dw;
        switch (fam) {
            case WeightFamily::thermal: w *= p / (1.0 + p); break;
            case WeightFamily::poisson:
                w *= p * p / (n + 1.0);
                break;
            case WeightFamily::squeezed:
                w *= (2.0 * n + 1.0) / (2.0 * n + 2.0) * (p / (1.0 + p));
                break;
        }
    }
    return out;
}

} // namespace detail

/// Spin-survival expectation for red-sideband readout of a thermal (geometric)
/// distribution with mean occupation lambda:
///   <X> = sum_n K(beta sqrt(n)) lambda^n / (1+lambda)^(n+1),
/// together with d<X>/dlambda. lambda = sinh^2 r for a two-mode squeezed
/// marginal. Assemble d<X>/dphi with dlambda/dphi = -(sinh^2 r0 / 2) sin(phi)
/// when lambda(phi) = sinh^2 r0 cos^2(phi/2).
inline SeriesValue rsb_model_tms(double lambda, double beta, int n_terms,
                                 SeriesKernel kernel = SeriesKernel::probability) {
    if (lambda < 0) throw DomainError("rsb_model_tms: lambda must be nonnegative");
    if (n_terms < 1) throw DomainError("rsb_model_tms: n_terms must be positive");
    if (lambda > 0 && std::pow(lambda / (1.0 + lambda), n_terms) > 1e-10)
        throw DomainError("rsb_model_tms: n_terms too small for requested lambda");
    const auto ev =
        detail::readout_series(detail::WeightFamily::thermal, lambda, beta, n_terms, kernel);
    return {ev.survival, ev.d_survival};
}

/// Same series for red-sideband readout of a coherent state (Poisson weights
/// with mean alpha^2); derivative taken with respect to alpha.
inline SeriesValue rsb_model_coherent(double alpha, double beta, int n_terms,
                                      SeriesKernel kernel = SeriesKernel::probability) {
    if (alpha < 0) throw DomainError("rsb_model_coherent: alpha must be nonnegative");
    if (n_terms < 1) throw DomainError("rsb_model_coherent: n_terms must be positive");
    const double mu = alpha * alpha;
    if (mu > 0 && n_terms < mu + 10.0 * std::sqrt(mu) + 10)
        throw DomainError("rsb_model_coherent: n_terms too small for requested alpha");
    const auto ev =
        detail::readout_series(detail::WeightFamily::poisson, alpha, beta, n_terms, kernel);
    return {ev.survival, ev.d_survival};
}

/// Squeezed-vacuum occupation weights P(2m) = C(2m, m) (tanh^2 r / 4)^m / cosh r,
/// parametrized by v = sinh^2 r; derivative taken with respect to v.
inline SeriesValue rsb_model_sms(double v, double beta, int n_terms,
                                 SeriesKernel kernel = SeriesKernel::probability) {
    if (v < 0) throw DomainError("rsb_model_sms: v must be nonnegative");
    if (n_terms < 1) throw DomainError("rsb_model_sms: n_terms must be positive");
    if (v > 0 && std::pow(v / (1.0 + v), n_terms) > 1e-10)
        throw DomainError("rsb_model_sms: n_terms too small for requested v");
    const auto ev =
        detail::readout_series(detail::WeightFamily::squeezed, v, beta, n_terms, kernel);
    return {ev.survival, ev.d_survival};
}

/// Series length that keeps the discarded geometric tail below tail_tol.
inline int thermal_series_terms(double lambda, double tail_tol = 1e-12) {
    if (lambda <= 0) return 1;
    const double q = lambda / (1.0 + lambda);
    const int n = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(q))) + 2;
    return std::max(n, 8);
}

} // namespace tmsim
