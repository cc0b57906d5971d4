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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "tmsim/errors.hpp"
#include "tmsim/expm.hpp"
#include "tmsim/fock.hpp"

namespace tmsim {

// ---------------------------------------------------------------------------
// Drive-to-gate parameter map
// ---------------------------------------------------------------------------

enum class GateKind { displacement, sms_a, sms_b, tms, beamsplitter };

/// One primitive motional operation. `magnitude` is the derived unitary
/// parameter: |alpha| for a displacement, r for a squeeze, the mixing angle
/// for a beamsplitter. `theta` is the drive phase.
struct GateSpec {
    GateKind kind = GateKind::displacement;
    double g = 0.0;
    double t = 0.0;
    double delta = 0.0;
    double theta = 0.0;
    double magnitude = 0.0;
    Mode mode = Mode::a; // displaced mode; ignored by two-mode gates

    cplx alpha() const { return std::polar(magnitude, theta); }
};

/// Physical drive values -> unitary parameter. Resonant drives only.
///
/// displacement: alpha = g t; single-mode squeeze: r = g t;
/// two-mode squeeze: r = 2 g t; beamsplitter (H prefactor g/2): mix = g t / 2,
/// so a 50/50 pulse has mix = pi/4 and a full swap mix = pi/2.
inline GateSpec gate_from_drive(GateKind kind, double g, double t, double theta = 0.0,
                                double delta = 0.0) {
    if (g < 0 || t < 0) throw DomainError("gate_from_drive: g and t must be nonnegative");
    if (delta != 0.0)
        throw DomainError("gate_from_drive: only resonant gates (delta = 0) are supported");
    GateSpec spec;
    spec.kind = kind;
    spec.g = g;
    spec.t = t;
    spec.theta = theta;
    switch (kind) {
        case GateKind::displacement: spec.magnitude = g * t; break;
        case GateKind::sms_a:
        case GateKind::sms_b: spec.magnitude = g * t; break;
        case GateKind::tms: spec.magnitude = 2.0 * g * t; break;
        case GateKind::beamsplitter: spec.magnitude = 0.5 * g * t; break;
    }
    return spec;
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reference parametric coupling rates (rad/s). The *_fit values come from
/// fits to driven states at maximum drive voltage; the *_theory values from
/// the electrical circuit model of the drive chain.
struct DriveCatalog {
    double displacement_g_fit = kTwoPi * 1.37e3;
    double sms_g_fit = kTwoPi * 3.99e3;
    double tms_g_fit = kTwoPi * 1.15e3;
    double bs_g_fit = kTwoPi * 0.64e3;
    double sms_g_theory = kTwoPi * 3.68e3;
    double tms_g_theory = kTwoPi * 1.09e3;
    double bs_g_theory = kTwoPi * 0.66e3;
};

inline constexpr DriveCatalog kDriveCatalog{};

/// Radial mode and qubit frequencies of the reference trap.
inline ModeConfig reference_modes() {
    return ModeConfig(kTwoPi * 1.80e6, kTwoPi * 1.83e6, kTwoPi * 2.63e6);
}

// ---------------------------------------------------------------------------
// Unitary construction
//
// Every gate is exp(G) of an anti-Hermitian generator on the truncated grid,
// evaluated by dense scaling-and-squaring (expm.hpp). The drive phase is
// peeled off exactly by number-operator gauge rotations, so only the
// zero-phase unitary ever hits the cache:
//
//   D(|a| e^{i g})         = R(g)   D(|a|)  R(-g)        R(v) = e^{i v N}
//   S(r, th)               = R(th/2) S(r,0) R(-th/2)
//   TMS(r, th)             = Ra(th) TMS(r,0) Ra(-th)
//   BS(mix, ph)            = Ra(ph) BS(mix,0) Ra(-ph)
//
// Two-mode generators are block-diagonal in a conserved quantity (n_a - n_b
// for the two-mode squeeze, n_a + n_b for the beamsplitter), so they are
// exponentiated sector by sector; sectors carrying no amplitude are skipped.
// ---------------------------------------------------------------------------

namespace detail {

struct GateCacheKey {
    int kind;
    std::uint64_t mag_bits;
    int da;
    int db;
    int sector;
    bool operator==(const GateCacheKey& o) const {
        return kind == o.kind && mag_bits == o.mag_bits && da == o.da && db == o.db &&
               sector == o.sector;
    }
};

struct GateCacheKeyHash {
    std::size_t operator()(const GateCacheKey& k) const {
        std::size_t h = std::hash<std::uint64_t>()(k.mag_bits);
        h ^= std::hash<int>()(k.kind) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<int>()(k.da * 131071 + k.db * 257 + k.sector) + (h << 6) + (h >> 2);
        return h;
    }
};

inline std::uint64_t double_bits(double x) {
    std::uint64_t b;
    std::memcpy(&b, &x, sizeof(b));
    return b;
}

class GateCache {
  public:
    std::shared_ptr<const Eigen::MatrixXcd> get_or_build(
        const GateCacheKey& key, const std::function<Eigen::MatrixXcd()>& build) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        if (map_.size() > 512) map_.clear(); // crude bound; entries are cheap to rebuild
        auto mat = std::make_shared<const Eigen::MatrixXcd>(build());
        map_.emplace(key, mat);
        return mat;
    }

  private:
    std::mutex mu_;
    std::unordered_map<GateCacheKey, std::shared_ptr<const Eigen::MatrixXcd>, GateCacheKeyHash>
        map_;
};

inline GateCache& gate_cache() {
    static GateCache cache;
    return cache;
}

// Zero-phase single-mode generators.
inline Eigen::MatrixXcd displacement_generator(double mag, int dim) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        const double s = mag * std::sqrt(static_cast<double>(n));
        g(n, n - 1) = s;  // a^dag
        g(n - 1, n) = -s; // -a
    }
    return g;
}

inline Eigen::MatrixXcd squeeze_generator(double r, int dim) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n + 2 < dim; ++n) {
        const double s = 0.5 * r * std::sqrt(static_cast<double>((n + 1) * (n + 2)));
        g(n, n + 2) = s;  // (r/2) a^2
        g(n + 2, n) = -s; // -(r/2) a^dag^2
    }
    return g;
}

// Sector basis of a two-mode gate: the list of n_a values in the invariant
// subspace. TMS sectors are labelled by d = n_a - n_b, beamsplitter sectors
// by N = n_a + n_b.
struct SectorBasis {
    int na_lo = 0;
    int size = 0;
};

inline SectorBasis tms_sector(int d, int da, int db) {
    SectorBasis s;
    s.na_lo = std::max(0, d);
    const int na_hi = std::min(da - 1, db - 1 + d);
    s.size = na_hi - s.na_lo + 1;
    return s;
}

inline SectorBasis bs_sector(int N, int da, int db) {
    SectorBasis s;
    s.na_lo = std::max(0, N - (db - 1));
    const int na_hi = std::min(da - 1, N);
    s.size = na_hi - s.na_lo + 1;
    return s;
}

// r (a^dag b^dag - a b) restricted to a d-sector; tridiagonal in n_a.
inline Eigen::MatrixXcd tms_sector_generator(double r, int d, int da, int db) {
    const SectorBasis s = tms_sector(d, da, db);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(s.size, s.size);
    for (int i = 0; i + 1 < s.size; ++i) {
        const int na = s.na_lo + i;
        const int nb = na - d;
        const double c = r * std::sqrt(static_cast<double>((na + 1) * (nb + 1)));
        g(i + 1, i) = c;
        g(i, i + 1) = -c;
    }
    return g;
}

// mix (a b^dag - a^dag b) restricted to an N-sector; tridiagonal in n_a.
inline Eigen::MatrixXcd bs_sector_generator(double mix, int N, int da, int db) {
    const SectorBasis s = bs_sector(N, da, db);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(s.size, s.size);
    for (int i = 0; i + 1 < s.size; ++i) {
        const int na = s.na_lo + i + 1; // row i+1 has n_a = na
        const int nb = N - na;
        // <na-1, nb+1| a b^dag |na, nb> = sqrt(na (nb+1))
        const double c = mix * std::sqrt(static_cast<double>(na * (nb + 1)));
        g(i, i + 1) = c;
        g(i + 1, i) = -c;
    }
    return g;
}

// e^{i v N} on one mode of the state (diagonal phase).
inline void apply_mode_rotation(TwoModeQubitState& s, Mode mode, double v) {
    if (v == 0.0) return;
    const int da = s.dim_a(), db = s.dim_b();
    auto& amp = s.amplitudes();
    for (int q = 0; q < 2; ++q)
        for (int na = 0; na < da; ++na) {
            const cplx pa = (mode == Mode::a) ? std::polar(1.0, v * na) : cplx(1.0, 0.0);
            for (int nb = 0; nb < db; ++nb) {
                const cplx p =
                    (mode == Mode::a) ? pa : std::polar(1.0, v * nb);
                amp[s.index(static_cast<Spin>(q), na, nb)] *= p;
            }
        }
}

inline void apply_single_mode_unitary(TwoModeQubitState& s, Mode mode,
                                      const Eigen::MatrixXcd& u) {
    const int da = s.dim_a(), db = s.dim_b();
    const int dm = (mode == Mode::a) ? da : db;
    Eigen::VectorXcd v(dm), w(dm);
    auto& amp = s.amplitudes();
    if (mode == Mode::a) {
        for (int q = 0; q < 2; ++q)
            for (int nb = 0; nb < db; ++nb) {
                for (int na = 0; na < da; ++na)
                    v(na) = amp[s.index(static_cast<Spin>(q), na, nb)];
                w.noalias() = u * v;
                for (int na = 0; na < da; ++na)
                    amp[s.index(static_cast<Spin>(q), na, nb)] = w(na);
            }
    } else {
        for (int q = 0; q < 2; ++q)
            for (int na = 0; na < da; ++na) {
                for (int nb = 0; nb < db; ++nb)
                    v(nb) = amp[s.index(static_cast<Spin>(q), na, nb)];
                w.noalias() = u * v;
                for (int nb = 0; nb < db; ++nb)
                    amp[s.index(static_cast<Spin>(q), na, nb)] = w(nb);
            }
    }
}

enum class TwoModeKind { tms, beamsplitter };

inline void apply_two_mode_unitary(TwoModeQubitState& s, TwoModeKind kind, double magnitude) {
    const int da = s.dim_a(), db = s.dim_b();
    auto& amp = s.amplitudes();
    const int sec_lo = (kind == TwoModeKind::tms) ? -(db - 1) : 0;
    const int sec_hi = (kind == TwoModeKind::tms) ? (da - 1) : (da - 1) + (db - 1);
    Eigen::VectorXcd v, w;
    for (int sec = sec_lo; sec <= sec_hi; ++sec) {
        const SectorBasis basis = (kind == TwoModeKind::tms) ? tms_sector(sec, da, db)
                                                             : bs_sector(sec, da, db);
        if (basis.size <= 0) continue;
        // Sectors carrying no amplitude stay zero under the block unitary.
        double mass = 0.0;
        for (int q = 0; q < 2; ++q)
            for (int i = 0; i < basis.size; ++i) {
                const int na = basis.na_lo + i;
                const int nb = (kind == TwoModeKind::tms) ? na - sec : sec - na;
                mass += std::norm(amp[s.index(static_cast<Spin>(q), na, nb)]);
            }
        if (mass == 0.0) continue;

        GateCacheKey key{kind == TwoModeKind::tms ? 100 : 101, double_bits(magnitude), da, db,
                         sec};
        auto u = gate_cache().get_or_build(key, [&]() {
            return expm(kind == TwoModeKind::tms ? tms_sector_generator(magnitude, sec, da, db)
                                                 : bs_sector_generator(magnitude, sec, da, db));
        });
        v.resize(basis.size);
        w.resize(basis.size);
        for (int q = 0; q < 2; ++q) {
            for (int i = 0; i < basis.size; ++i) {
                const int na = basis.na_lo + i;
                const int nb = (kind == TwoModeKind::tms) ? na - sec : sec - na;
                v(i) = amp[s.index(static_cast<Spin>(q), na, nb)];
            }
            w.noalias() = (*u) * v;
            for (int i = 0; i < basis.size; ++i) {
                const int na = basis.na_lo + i;
                const int nb = (kind == TwoModeKind::tms) ? na - sec : sec - na;
                amp[s.index(static_cast<Spin>(q), na, nb)] = w(i);
            }
        }
    }
}

inline void check_boundary(const TwoModeQubitState& s, const char* gate) {
    const double leak = s.boundary_population();
    if (leak > s.truncation().leak_tol)
        throw TruncationError(std::string(gate) + ": state reached the Fock cutoff", leak,
                              s.truncation().leak_tol);
}

// Gaussian tail estimate of the population a displaced state must at least
// park at or beyond the cutoff. Uses the lower bound |sqrt(nbar) - |alpha||^2
// on the final mean so that phase-cancelling (inverse) displacements are not
// refused; exact for displacements of the vacuum. The exact boundary check
// after the gate catches everything this estimate lets through.
inline double displacement_leak_estimate(double nbar_now, double amag, int n_max) {
    const double mu = std::pow(std::sqrt(std::max(0.0, nbar_now)) - amag, 2);
    const double sigma = std::sqrt(std::max(mu, 0.25));
    const double z = (static_cast<double>(n_max) + 0.5 - mu) / sigma;
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Gate entry points (pure: state in, state out)
// ---------------------------------------------------------------------------

/// exp(alpha a^dag - alpha* a) on the selected mode.
inline TwoModeQubitState displacement(const TwoModeQubitState& in, cplx alpha, Mode mode) {
    TwoModeQubitState s = in;
    const double mag = std::abs(alpha);
    if (mag == 0.0) return s;
    const int n_max = (mode == Mode::a) ? s.truncation().n_max_a : s.truncation().n_max_b;
    const double nbar_now = number_stats(in, mode == Mode::a ? Marginal::mode_a
                                                             : Marginal::mode_b).mean;
    const double predicted = detail::displacement_leak_estimate(nbar_now, mag, n_max);
    if (predicted > s.truncation().leak_tol)
        throw TruncationError("displacement: predicted occupation does not fit the truncation",
                              predicted, s.truncation().leak_tol);
    const double gamma = std::arg(alpha);
    const int dim = (mode == Mode::a) ? s.dim_a() : s.dim_b();
    detail::GateCacheKey key{0, detail::double_bits(mag), dim, 0, 0};
    auto u = detail::gate_cache().get_or_build(
        key, [&]() { return expm(detail::displacement_generator(mag, dim)); });
    detail::apply_mode_rotation(s, mode, -gamma);
    detail::apply_single_mode_unitary(s, mode, *u);
    detail::apply_mode_rotation(s, mode, gamma);
    detail::check_boundary(s, "displacement");
    return s;
}

/// exp[(r/2)(e^{-i theta} a^2 - e^{i theta} a^dag^2)] on the selected mode.
/// Squeezed vacuum carries only even Fock levels.
inline TwoModeQubitState single_mode_squeeze(const TwoModeQubitState& in, double r,
                                             double theta, Mode mode) {
    if (r < 0) throw DomainError("single_mode_squeeze: r must be nonnegative");
    TwoModeQubitState s = in;
    if (r == 0.0) return s;
    const int dim = (mode == Mode::a) ? s.dim_a() : s.dim_b();
    detail::GateCacheKey key{1, detail::double_bits(r), dim, 0, 0};
    auto u = detail::gate_cache().get_or_build(
        key, [&]() { return expm(detail::squeeze_generator(r, dim)); });
    detail::apply_mode_rotation(s, mode, -0.5 * theta);
    detail::apply_single_mode_unitary(s, mode, *u);
    detail::apply_mode_rotation(s, mode, 0.5 * theta);
    detail::check_boundary(s, "single_mode_squeeze");
    return s;
}

/// exp[r(e^{i theta} a^dag b^dag - e^{-i theta} a b)]. From vacuum this gives
/// amplitudes (e^{i theta} tanh r)^n / cosh r on |n, n>, i.e. the joint
/// populations live on the n_a = n_b diagonal.
inline TwoModeQubitState two_mode_squeeze(const TwoModeQubitState& in, double r,
                                          double theta = 0.0) {
    if (r < 0) throw DomainError("two_mode_squeeze: r must be nonnegative");
    TwoModeQubitState s = in;
    if (r == 0.0) return s;
    detail::apply_mode_rotation(s, Mode::a, -theta);
    detail::apply_two_mode_unitary(s, detail::TwoModeKind::tms, r);
    detail::apply_mode_rotation(s, Mode::a, theta);
    detail::check_boundary(s, "two_mode_squeeze");
    return s;
}

/// exp[mix(e^{-i phi} a b^dag - e^{i phi} a^dag b)]. Conserves n_a + n_b;
/// 50/50 at mix = pi/4, full swap at mix = pi/2.
inline TwoModeQubitState beamsplitter(const TwoModeQubitState& in, double mix,
                                      double phi_bs = 0.0) {
    TwoModeQubitState s = in;
    if (mix == 0.0) return s;
    detail::apply_mode_rotation(s, Mode::a, -phi_bs);
    detail::apply_two_mode_unitary(s, detail::TwoModeKind::beamsplitter, mix);
    detail::apply_mode_rotation(s, Mode::a, phi_bs);
    return s;
}

inline TwoModeQubitState apply_gate(const TwoModeQubitState& in, const GateSpec& spec) {
    switch (spec.kind) {
        case GateKind::displacement: return displacement(in, spec.alpha(), spec.mode);
        case GateKind::sms_a: return single_mode_squeeze(in, spec.magnitude, spec.theta, Mode::a);
        case GateKind::sms_b: return single_mode_squeeze(in, spec.magnitude, spec.theta, Mode::b);
        case GateKind::tms: return two_mode_squeeze(in, spec.magnitude, spec.theta);
        case GateKind::beamsplitter: return beamsplitter(in, spec.magnitude, spec.theta);
    }
    throw DomainError("apply_gate: unknown gate kind");
}

} // namespace tmsim
