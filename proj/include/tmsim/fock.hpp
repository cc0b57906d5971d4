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

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "tmsim/errors.hpp"

namespace tmsim {

using cplx = std::complex<double>;

/// Fock cutoff per mode plus the acceptable boundary-population budget.
///
/// Amplitudes with n > n_max are not represented. A state is considered
/// healthy as long as the probability parked at (or lost past) the cutoff
/// stays below leak_tol.
struct Truncation {
    int n_max_a = 1;
    int n_max_b = 1;
    double leak_tol = 1e-6;

    Truncation() = default;
    Truncation(int n_max_a, int n_max_b, double leak_tol = 1e-6)
        : n_max_a(n_max_a), n_max_b(n_max_b), leak_tol(leak_tol) {
        if (n_max_a < 1 || n_max_b < 1)
            throw DimensionError("Truncation: n_max must be >= 1 per mode");
        if (!(leak_tol > 0.0) || !(leak_tol < 1.0))
            throw DimensionError("Truncation: leak_tol must lie in (0, 1)");
    }

    int dim_a() const { return n_max_a + 1; }
    int dim_b() const { return n_max_b + 1; }
    std::size_t dim_total() const {
        return 2 * static_cast<std::size_t>(dim_a()) * static_cast<std::size_t>(dim_b());
    }

    bool operator==(const Truncation& o) const {
        return n_max_a == o.n_max_a && n_max_b == o.n_max_b;
    }
};

/// Cutoff rule used when no explicit truncation is given: mean plus eight
/// standard deviations of a Poisson surrogate. Adequate for coherent and
/// moderately squeezed states; thermal tails need a wider margin, which
/// callers request explicitly.
inline int default_n_max(double nbar_target) {
    if (nbar_target < 0) throw DomainError("default_n_max: negative target occupation");
    return static_cast<int>(std::ceil(nbar_target + 8.0 * std::sqrt(nbar_target + 1.0)));
}

enum class Spin { up = 0, down = 1 };
enum class Mode { a = 0, b = 1 };

/// Angular frequencies of the two motional modes and the qubit.
struct ModeConfig {
    double omega_a;
    double omega_b;
    double omega_0;

    ModeConfig(double omega_a, double omega_b, double omega_0)
        : omega_a(omega_a), omega_b(omega_b), omega_0(omega_0) {
        if (!(omega_a > 0) || !(omega_b > 0) || !(omega_0 > 0))
            throw DomainError("ModeConfig: frequencies must be positive");
        if (omega_a == omega_b)
            throw DomainError("ModeConfig: modes must be non-degenerate");
    }
};

struct NumberStats {
    double mean = 0.0;
    double variance = 0.0;
};

enum class Marginal { mode_a, mode_b, total };

/// Pure state of qubit (x) mode-a (x) mode-b on the truncated Fock grid.
///
/// Amplitudes are stored qubit-major: index (q, n_a, n_b). norm_leak tracks
/// probability explicitly discarded by re-truncation; unitary operations
/// leave it untouched, so |psi|^2 + norm_leak == 1 throughout.
class TwoModeQubitState {
  public:
    explicit TwoModeQubitState(const Truncation& trunc)
        : trunc_(trunc), amp_(trunc.dim_total(), cplx(0.0, 0.0)), norm_leak_(0.0) {}

    const Truncation& truncation() const { return trunc_; }
    int dim_a() const { return trunc_.dim_a(); }
    int dim_b() const { return trunc_.dim_b(); }

    std::size_t index(Spin q, int na, int nb) const {
        return (static_cast<std::size_t>(q) * dim_a() + na) * dim_b() + nb;
    }
    cplx& at(Spin q, int na, int nb) { return amp_[index(q, na, nb)]; }
    const cplx& at(Spin q, int na, int nb) const { return amp_[index(q, na, nb)]; }

    std::vector<cplx>& amplitudes() { return amp_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    double norm_leak() const { return norm_leak_; }
    void add_norm_leak(double dl) { norm_leak_ += dl; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : amp_) s += std::norm(c);
        return s;
    }

    bool valid() const { return norm_leak_ <= trunc_.leak_tol; }

    /// Probability currently parked at the Fock boundary of either mode.
    double boundary_population() const {
        double s = 0.0;
        const int na_top = trunc_.n_max_a, nb_top = trunc_.n_max_b;
        for (int q = 0; q < 2; ++q) {
            for (int nb = 0; nb <= nb_top; ++nb)
                s += std::norm(at(static_cast<Spin>(q), na_top, nb));
            for (int na = 0; na < na_top; ++na)
                s += std::norm(at(static_cast<Spin>(q), na, nb_top));
        }
        return s;
    }

  private:
    Truncation trunc_;
    std::vector<cplx> amp_;
    double norm_leak_;
};

inline TwoModeQubitState make_vacuum(const Truncation& trunc, Spin qubit = Spin::up) {
    TwoModeQubitState s(trunc);
    s.at(qubit, 0, 0) = cplx(1.0, 0.0);
    return s;
}

inline TwoModeQubitState make_fock(const Truncation& trunc, Spin qubit, int na, int nb) {
    if (na < 0 || na > trunc.n_max_a || nb < 0 || nb > trunc.n_max_b)
        throw DimensionError("make_fock: occupation outside truncation");
    TwoModeQubitState s(trunc);
    s.at(qubit, na, nb) = cplx(1.0, 0.0);
    return s;
}

/// Annihilation operator on the (n_max+1)-dimensional Fock grid:
/// a[n-1, n] = sqrt(n). The creation operator is its adjoint.
inline Eigen::MatrixXcd ladder_matrix(int n_max) {
    if (n_max < 1) throw DimensionError("ladder_matrix: n_max must be >= 1");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

/// Marginal Fock distribution of one mode, traced over the qubit and the
/// other mode. Sums to 1 - norm_leak.
inline std::vector<double> fock_marginal(const TwoModeQubitState& s, Mode which) {
    const int da = s.dim_a(), db = s.dim_b();
    std::vector<double> p(which == Mode::a ? da : db, 0.0);
    for (int q = 0; q < 2; ++q)
        for (int na = 0; na < da; ++na)
            for (int nb = 0; nb < db; ++nb) {
                const double w = std::norm(s.at(static_cast<Spin>(q), na, nb));
                p[which == Mode::a ? na : nb] += w;
            }
    return p;
}

/// Joint (n_a, n_b) population matrix, traced over the qubit.
inline Eigen::MatrixXd joint_fock_distribution(const TwoModeQubitState& s) {
    const int da = s.dim_a(), db = s.dim_b();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(da, db);
    for (int q = 0; q < 2; ++q)
        for (int na = 0; na < da; ++na)
            for (int nb = 0; nb < db; ++nb)
                p(na, nb) += std::norm(s.at(static_cast<Spin>(q), na, nb));
    return p;
}

/// Mean and variance of the phonon number of one mode (or of n_a + n_b).
inline NumberStats number_stats(const TwoModeQubitState& s, Marginal which) {
    if (!s.valid())
        throw TruncationError("number_stats: state exceeded its leak tolerance",
                              s.norm_leak(), s.truncation().leak_tol);
    double m1 = 0.0, m2 = 0.0, w_tot = 0.0;
    const int da = s.dim_a(), db = s.dim_b();
    for (int q = 0; q < 2; ++q)
        for (int na = 0; na < da; ++na)
            for (int nb = 0; nb < db; ++nb) {
                const double w = std::norm(s.at(static_cast<Spin>(q), na, nb));
                if (w == 0.0) continue;
                double n = 0.0;
                switch (which) {
                    case Marginal::mode_a: n = na; break;
                    case Marginal::mode_b: n = nb; break;
                    case Marginal::total: n = na + nb; break;
                }
                m1 += n * w;
                m2 += n * n * w;
                w_tot += w;
            }
    // Normalize by the represented probability so a tiny norm_leak does not
    // masquerade as missing population.
    if (w_tot > 0.0) {
        m1 /= w_tot;
        m2 /= w_tot;
    }
    NumberStats st;
    st.mean = m1;
    st.variance = std::max(0.0, m2 - m1 * m1);
    return st;
}

inline cplx overlap(const TwoModeQubitState& s1, const TwoModeQubitState& s2) {
    if (!(s1.truncation() == s2.truncation()))
        throw DimensionError("overlap: mismatched truncations");
    cplx acc(0.0, 0.0);
    const auto& a = s1.amplitudes();
    const auto& b = s2.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double fidelity(const TwoModeQubitState& s1, const TwoModeQubitState& s2) {
    return std::norm(overlap(s1, s2));
}

inline double spin_down_probability(const TwoModeQubitState& s) {
    double p = 0.0;
    const int da = s.dim_a(), db = s.dim_b();
    for (int na = 0; na < da; ++na)
        for (int nb = 0; nb < db; ++nb) p += std::norm(s.at(Spin::down, na, nb));
    return p;
}

/// Purity Tr(rho_m^2) of the reduced state of one mode, computed from the
/// joint amplitudes. 1 for a separable (pure-marginal) mode.
inline double mode_purity(const TwoModeQubitState& s, Mode which) {
    const int da = s.dim_a(), db = s.dim_b();
    const int dm = (which == Mode::a) ? da : db;
    const int denv = (which == Mode::a) ? db : da;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dm, dm);
    for (int q = 0; q < 2; ++q)
        for (int e = 0; e < denv; ++e)
            for (int i = 0; i < dm; ++i)
                for (int j = 0; j < dm; ++j) {
                    const cplx ci = (which == Mode::a) ? s.at(static_cast<Spin>(q), i, e)
                                                       : s.at(static_cast<Spin>(q), e, i);
                    const cplx cj = (which == Mode::a) ? s.at(static_cast<Spin>(q), j, e)
                                                       : s.at(static_cast<Spin>(q), e, j);
                    rho(i, j) += ci * std::conj(cj);
                }
    return rho.cwiseAbs2().sum();
}

/// Copy a state onto a different Fock grid. Amplitudes that do not fit are
/// discarded and their probability is added to norm_leak.
inline TwoModeQubitState resized(const TwoModeQubitState& s, const Truncation& target) {
    TwoModeQubitState out(target);
    out.add_norm_leak(s.norm_leak());
    double lost = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int na = 0; na < s.dim_a(); ++na)
            for (int nb = 0; nb < s.dim_b(); ++nb) {
                const cplx c = s.at(static_cast<Spin>(q), na, nb);
                if (na <= target.n_max_a && nb <= target.n_max_b)
                    out.at(static_cast<Spin>(q), na, nb) = c;
                else
                    lost += std::norm(c);
            }
    out.add_norm_leak(lost);
    return out;
}

/// Geometric (thermal) occupation weights P(n) = nbar^n / (1+nbar)^(n+1).
inline std::vector<double> thermal_weights(double nbar, int n_max) {
    if (nbar < 0) throw DomainError("thermal_weights: negative occupation");
    std::vector<double> w(n_max + 1, 0.0);
    if (nbar == 0.0) {
        w[0] = 1.0;
        return w;
    }
    const double q = nbar / (1.0 + nbar);
    double cur = 1.0 / (1.0 + nbar);
    for (int n = 0; n <= n_max; ++n) {
        w[n] = cur;
        cur *= q;
    }
    return w;
}

/// Expectation value of `eval` over a thermal mixture of Fock inputs with
/// geometric weights on both modes. Exact for linear functionals of the
/// density operator; included weights are renormalized so the discarded
/// geometric tail does not bias the average.
inline double thermal_mixture_average(
    const Truncation& trunc, double nbar_a, double nbar_b, Spin qubit,
    const std::function<double(const TwoModeQubitState&)>& eval, double tail_tol = 1e-10) {
    auto cutoff = [&](double nbar) {
        if (nbar == 0.0) return 0;
        const double q = nbar / (1.0 + nbar);
        int n = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(q)));
        return std::min(std::max(n, 0), trunc.n_max_a);
    };
    const int ka = std::min(cutoff(nbar_a), trunc.n_max_a);
    const int kb = std::min(cutoff(nbar_b), trunc.n_max_b);
    const auto wa = thermal_weights(nbar_a, ka);
    const auto wb = thermal_weights(nbar_b, kb);
    double acc = 0.0, wsum = 0.0;
    for (int na = 0; na <= ka; ++na)
        for (int nb = 0; nb <= kb; ++nb) {
            const double w = wa[na] * wb[nb];
            if (w < tail_tol * tail_tol) continue;
            acc += w * eval(make_fock(trunc, qubit, na, nb));
            wsum += w;
        }
    return acc / wsum;
}

} // namespace tmsim
