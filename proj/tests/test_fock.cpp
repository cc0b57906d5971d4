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

#include <catch2/catch.hpp>

#include "tmsim/fock.hpp"
#include "tmsim/gates.hpp"

using namespace tmsim;

TEST_CASE("vacuum construction") {
    const Truncation tr(10, 10);
    const auto vac = make_vacuum(tr, Spin::up);
    REQUIRE(std::norm(vac.at(Spin::up, 0, 0)) == Approx(1.0));
    REQUIRE(vac.norm_sq() == Approx(1.0));
    REQUIRE(vac.norm_leak() == 0.0);

    const auto sa = number_stats(vac, Marginal::mode_a);
    const auto sb = number_stats(vac, Marginal::mode_b);
    REQUIRE(sa.mean == Approx(0.0).margin(1e-12));
    REQUIRE(sa.variance == Approx(0.0).margin(1e-12));
    REQUIRE(sb.mean == Approx(0.0).margin(1e-12));

    REQUIRE(std::abs(overlap(vac, make_vacuum(tr, Spin::up))) == Approx(1.0));
}

TEST_CASE("truncation validation") {
    REQUIRE_THROWS_AS(Truncation(0, 5), DimensionError);
    REQUIRE_THROWS_AS(Truncation(5, 5, 0.0), DimensionError);
    REQUIRE_THROWS_AS(Truncation(5, 5, 1.5), DimensionError);
    REQUIRE(default_n_max(0.0) == 8);
}

TEST_CASE("ladder matrix") {
    REQUIRE_THROWS_AS(ladder_matrix(0), DimensionError);

    const auto a1 = ladder_matrix(1);
    REQUIRE(a1.rows() == 2);
    REQUIRE(std::abs(a1(0, 1) - 1.0) < 1e-15);
    REQUIRE(std::abs(a1(1, 0)) == 0.0);

    const int n_max = 12;
    const auto a = ladder_matrix(n_max);
    const Eigen::MatrixXcd num = a.adjoint() * a;
    for (int n = 0; n <= n_max; ++n)
        REQUIRE(num(n, n).real() == Approx(static_cast<double>(n)).margin(1e-12));

    // [a, a^dag] = 1 except in the bottom-right corner, where the truncation
    // removes the level that would complete the commutator.
    const Eigen::MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; j <= n_max; ++j) {
            const double expect = (i == j) ? (i == n_max ? -static_cast<double>(n_max) : 1.0)
                                           : 0.0;
            REQUIRE(comm(i, j).real() == Approx(expect).margin(1e-12));
            REQUIRE(comm(i, j).imag() == Approx(0.0).margin(1e-12));
        }
}

TEST_CASE("number statistics against closed forms") {
    SECTION("coherent state is Poisson") {
        const Truncation tr(default_n_max(4.0), 2);
        const auto st = displacement(make_vacuum(tr), cplx(2.0, 0.0), Mode::a);
        const auto ns = number_stats(st, Marginal::mode_a);
        REQUIRE(ns.mean == Approx(4.0).margin(1e-9));
        REQUIRE(ns.variance == Approx(4.0).margin(1e-8));
    }

    SECTION("squeezed vacuum against brute-force sums over its populations") {
        const double r = 1.0;
        const Truncation tr(100, 2);
        const auto st = single_mode_squeeze(make_vacuum(tr), r, 0.0, Mode::a);
        const auto ns = number_stats(st, Marginal::mode_a);

        const double nbar = std::pow(std::sinh(r), 2);
        REQUIRE(ns.mean == Approx(nbar).epsilon(1e-9));
        REQUIRE(ns.variance == Approx(2.0 * nbar * (nbar + 1.0)).epsilon(1e-9));

        // Independent oracle: sum the analytic even-level populations.
        double m1 = 0.0, m2 = 0.0, w = 1.0 / std::cosh(r);
        const double t2 = std::pow(std::tanh(r), 2);
        for (int m = 0; m < 400; ++m) {
            m1 += 2.0 * m * w;
            m2 += 4.0 * m * m * w;
            w *= (2.0 * m + 1.0) / (2.0 * m + 2.0) * t2;
        }
        REQUIRE(ns.mean == Approx(m1).epsilon(1e-9));
        REQUIRE(ns.variance == Approx(m2 - m1 * m1).epsilon(1e-9));
    }

    SECTION("two-mode squeezed total number against the joint distribution") {
        const double r = 0.9;
        const Truncation tr(70, 70);
        const auto st = two_mode_squeeze(make_vacuum(tr), r);
        const auto tot = number_stats(st, Marginal::total);

        // Brute force over the diagonal geometric distribution P(n) with
        // total occupation 2n.
        const double nbar = std::pow(std::sinh(r), 2);
        double m1 = 0.0, m2 = 0.0, w = 1.0 / (1.0 + nbar);
        for (int n = 0; n < 2000; ++n) {
            m1 += 2.0 * n * w;
            m2 += 4.0 * n * n * w;
            w *= nbar / (1.0 + nbar);
        }
        REQUIRE(tot.mean == Approx(m1).epsilon(1e-9));
        REQUIRE(tot.variance == Approx(m2 - m1 * m1).epsilon(1e-9));
        REQUIRE(tot.variance == Approx(std::pow(std::sinh(2.0 * r), 2)).epsilon(1e-9));

        // Perfect n_a = n_b correlation: per-mode means match and add up.
        const auto na = number_stats(st, Marginal::mode_a);
        const auto nb = number_stats(st, Marginal::mode_b);
        REQUIRE(na.mean == Approx(nb.mean).margin(1e-9));
        REQUIRE(tot.mean == Approx(na.mean + nb.mean).margin(1e-9));
    }

    SECTION("invalid states are refused") {
        const Truncation big(40, 2);
        auto st = displacement(make_vacuum(big), cplx(3.0, 0.0), Mode::a);
        const auto clipped = resized(st, Truncation(4, 2));
        REQUIRE_FALSE(clipped.valid());
        REQUIRE_THROWS_AS(number_stats(clipped, Marginal::mode_a), TruncationError);
    }
}

TEST_CASE("fock marginals") {
    SECTION("vacuum") {
        const auto p = fock_marginal(make_vacuum(Truncation(6, 6)), Mode::a);
        REQUIRE(p[0] == Approx(1.0));
        for (std::size_t n = 1; n < p.size(); ++n) REQUIRE(p[n] == 0.0);
    }

    SECTION("two-mode squeezed marginal is geometric") {
        const double nbar = 1.5;
        const double r = std::asinh(std::sqrt(nbar));
        const Truncation tr(70, 70);
        const auto st = two_mode_squeeze(make_vacuum(tr), r);
        const auto p = fock_marginal(st, Mode::a);
        const auto w = thermal_weights(nbar, tr.n_max_a);
        for (int n = 0; n <= 40; ++n) REQUIRE(p[n] == Approx(w[n]).margin(1e-10));
    }

    SECTION("coherent marginal is Poisson") {
        const double alpha = 1.3;
        const Truncation tr(40, 2);
        const auto st = displacement(make_vacuum(tr), cplx(alpha, 0.0), Mode::a);
        const auto p = fock_marginal(st, Mode::a);
        double w = std::exp(-alpha * alpha);
        for (int n = 0; n <= 20; ++n) {
            REQUIRE(p[n] == Approx(w).margin(1e-12));
            w *= alpha * alpha / (n + 1);
        }
    }

    SECTION("marginals sum to 1 - norm_leak") {
        const Truncation big(40, 4);
        const auto st = displacement(make_vacuum(big), cplx(2.0, 0.5), Mode::a);
        const auto clipped = resized(st, Truncation(8, 4, 0.9));
        const auto p = fock_marginal(clipped, Mode::a);
        double sum = 0.0;
        for (double v : p) sum += v;
        REQUIRE(sum == Approx(1.0 - clipped.norm_leak()).margin(1e-9));
        REQUIRE(clipped.norm_leak() > 0.0);
    }
}

TEST_CASE("overlap and fidelity") {
    const Truncation tr(12, 12);
    const auto f00 = make_fock(tr, Spin::up, 0, 0);
    const auto f10 = make_fock(tr, Spin::up, 1, 0);
    REQUIRE(std::abs(overlap(f00, f10)) == 0.0);
    REQUIRE_THROWS_AS(overlap(f00, make_vacuum(Truncation(13, 12))), DimensionError);

    // Splitting a two-mode squeezed state yields the same pair of squeezed
    // vacua as preparing them directly.
    const double r = 0.9;
    const Truncation big(60, 60);
    const auto split = beamsplitter(two_mode_squeeze(make_vacuum(big), r), kTwoPi / 8.0);
    const auto direct = single_mode_squeeze(
        single_mode_squeeze(make_vacuum(big), r, 0.0, Mode::a), r, kTwoPi / 2.0, Mode::b);
    REQUIRE(fidelity(split, direct) > 0.999);
    REQUIRE(fidelity(split, direct) > 1.0 - 1e-6);
}

TEST_CASE("mode purity") {
    const Truncation tr(50, 50);
    SECTION("separable coherent pair") {
        auto st = displacement(make_vacuum(tr), cplx(1.5, 0.0), Mode::a);
        st = displacement(st, cplx(0.0, 1.0), Mode::b);
        REQUIRE(mode_purity(st, Mode::a) == Approx(1.0).margin(1e-10));
    }
    SECTION("thermal marginal of a two-mode squeezed state") {
        const double nbar = 1.2;
        const auto st = two_mode_squeeze(make_vacuum(tr), std::asinh(std::sqrt(nbar)));
        // Purity of a geometric distribution: 1 / (1 + 2 nbar).
        REQUIRE(mode_purity(st, Mode::a) == Approx(1.0 / (1.0 + 2.0 * nbar)).margin(1e-8));
    }
}

TEST_CASE("thermal mixture averaging") {
    const Truncation tr(24, 24);
    const double nbar_a = 0.08, nbar_b = 0.05;
    // Expectations are linear in the density operator, so averaging the mean
    // phonon number over the mixture must return the thermal mean exactly.
    const double mean_a = thermal_mixture_average(
        tr, nbar_a, nbar_b, Spin::up,
        [](const TwoModeQubitState& s) { return number_stats(s, Marginal::mode_a).mean; });
    REQUIRE(mean_a == Approx(nbar_a).margin(1e-8));

    const double mean_tot = thermal_mixture_average(
        tr, nbar_a, nbar_b, Spin::up,
        [](const TwoModeQubitState& s) { return number_stats(s, Marginal::total).mean; });
    REQUIRE(mean_tot == Approx(nbar_a + nbar_b).margin(1e-8));
}

TEST_CASE("resized accounting") {
    const Truncation big(30, 6);
    const auto st = displacement(make_vacuum(big), cplx(1.8, 0.0), Mode::a);
    const auto small = resized(st, Truncation(5, 6, 0.9));
    REQUIRE(small.norm_sq() + small.norm_leak() == Approx(1.0).margin(1e-12));
    const auto back = resized(small, big);
    REQUIRE(back.norm_sq() + back.norm_leak() == Approx(1.0).margin(1e-12));
}
