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

#include "tmsim/fringe_model.hpp"
#include "tmsim/interferometer.hpp"

using namespace tmsim;

namespace {
constexpr double kPi = kTwoPi / 2.0;
}

TEST_CASE("tms_phase_param") {
    REQUIRE(tms_phase_param(0.9, 0.0) == Approx(0.9));
    REQUIRE(tms_phase_param(0.9, kPi) == Approx(0.0).margin(1e-12));
    // Quarter-period value: asinh(sinh(1.3229)/sqrt(2)) = 1.03704...
    const double r0 = 1.3229;
    const double expect = std::asinh(std::sinh(r0) / std::sqrt(2.0));
    REQUIRE(tms_phase_param(r0, kPi / 2.0) == Approx(expect));
    REQUIRE(expect == Approx(1.0370).margin(5e-4));
    REQUIRE_THROWS_AS(tms_phase_param(-0.1, 0.0), DomainError);

    // Simulation cross-check: two half-pulses at relative phase phi produce a
    // state whose occupation inverts to the same parameter.
    const Truncation tr(60, 60);
    auto st = two_mode_squeeze(make_vacuum(tr), r0 / 2.0, 0.0);
    st = two_mode_squeeze(st, r0 / 2.0, kPi / 2.0);
    const double nbar = number_stats(st, Marginal::mode_a).mean;
    REQUIRE(std::asinh(std::sqrt(nbar)) == Approx(expect).epsilon(1e-6));
}

TEST_CASE("delay_to_phase") {
    const ModeConfig modes(kTwoPi * 1.80e6, kTwoPi * 1.83e6, kTwoPi * 2.63e6);
    REQUIRE(delay_to_phase(0.0, modes) == 0.0);

    // A 33 kHz splitting turns a half-period delay into phi = pi.
    const ModeConfig split33(kTwoPi * 1.80e6, kTwoPi * (1.80e6 + 33e3), kTwoPi * 2.63e6);
    const double t_half = 1.0 / (2.0 * 33e3);
    REQUIRE(delay_to_phase(t_half, split33) == Approx(kPi).margin(1e-9));
    const double t_full = 1.0 / 33e3;
    const double phi_full = delay_to_phase(t_full, split33);
    REQUIRE(std::min(phi_full, kTwoPi - phi_full) == Approx(0.0).margin(1e-9));
    REQUIRE_THROWS_AS(delay_to_phase(-1.0, modes), DomainError);
}

TEST_CASE("circuit reversal points") {
    SECTION("su11_single returns to vacuum at phi = pi") {
        CircuitProgram prog;
        prog.kind = CircuitKind::su11_single;
        prog.state_param = 1.2;
        const auto res = run_circuit_detail(prog, kPi);
        REQUIRE(fidelity(res.before_readout, make_vacuum(res.before_readout.truncation())) >
                1.0 - 1e-9);
        REQUIRE(res.p_down < 1e-9);
    }

    SECTION("su11_two returns to vacuum at phi = pi") {
        CircuitProgram prog;
        prog.kind = CircuitKind::su11_two;
        prog.state_param = 1.2;
        const auto res = run_circuit_detail(prog, kPi);
        REQUIRE(fidelity(res.before_readout, make_vacuum(res.before_readout.truncation())) >
                1.0 - 1e-9);
        REQUIRE(res.p_down < 1e-9);
    }

    SECTION("su2 fully transfers mode a at phi = pi") {
        CircuitProgram prog;
        prog.kind = CircuitKind::su2;
        prog.state_param = 3.0;
        const auto res = run_circuit_detail(prog, kPi);
        const auto marg = fock_marginal(res.before_readout, Mode::a);
        double residual = 0.0;
        for (std::size_t n = 1; n < marg.size(); ++n) residual += marg[n];
        REQUIRE(residual < 1e-9);
        REQUIRE(res.p_down < 1e-9);
        // All the amplitude ends up as a coherent state in mode b.
        const auto target = displacement(
            make_vacuum(res.before_readout.truncation()), cplx(3.0, 0.0), Mode::b);
        REQUIRE(fidelity(res.before_readout, target) > 1.0 - 1e-8);
    }
}

TEST_CASE("fringe shape laws") {
    SECTION("su11_two intermediate occupation follows the squeeze composition") {
        const double r0 = 1.0;
        CircuitProgram prog;
        prog.kind = CircuitKind::su11_two;
        prog.state_param = r0;
        for (double phi : {0.0, 0.9, 2.0, 4.4}) {
            const auto res = run_circuit_detail(prog, phi);
            const double target = std::pow(std::sinh(tms_phase_param(r0, phi)), 2);
            REQUIRE(number_stats(res.before_readout, Marginal::mode_a).mean ==
                    Approx(target).margin(1e-6 * std::max(1.0, target)));
        }
    }

    SECTION("su2 mode-a occupation follows alpha0^2 cos^2(phi/2)") {
        const double alpha0 = 2.0;
        CircuitProgram prog;
        prog.kind = CircuitKind::su2;
        prog.state_param = alpha0;
        for (double phi : {0.0, 0.7, 1.9, 3.8, 5.6}) {
            const auto res = run_circuit_detail(prog, phi);
            const double target = alpha0 * alpha0 * std::pow(std::cos(0.5 * phi), 2);
            REQUIRE(number_stats(res.before_readout, Marginal::mode_a).mean ==
                    Approx(target).margin(1e-6));
        }
    }

    SECTION("fringes are 2 pi periodic") {
        CircuitProgram prog;
        prog.kind = CircuitKind::su11_two;
        prog.state_param = 0.9;
        prog.readout.beta = 1.1;
        for (double phi : {0.4, 2.2}) {
            REQUIRE(run_circuit(prog, phi) ==
                    Approx(run_circuit(prog, phi + kTwoPi)).margin(1e-9));
        }
    }

    SECTION("fringes are even about the reversal phase") {
        for (auto kind : {CircuitKind::su11_single, CircuitKind::su11_two}) {
            CircuitProgram prog;
            prog.kind = kind;
            prog.state_param = 1.1;
            prog.readout.beta = 0.9;
            for (double x : {0.3, 1.0, 2.0}) {
                REQUIRE(run_circuit(prog, kPi + x) ==
                        Approx(run_circuit(prog, kPi - x)).margin(1e-9));
            }
        }
    }

    SECTION("offsets shift the model as fit parameters") {
        CircuitProgram prog;
        prog.kind = CircuitKind::su11_two;
        prog.state_param = 0.8;
        prog.readout.beta = 1.0;
        CircuitProgram shifted = prog;
        shifted.phi0 = 0.6;
        shifted.v0 = 0.05;
        REQUIRE(run_circuit(shifted, 1.4) ==
                Approx(0.05 + run_circuit(prog, 1.4 - 0.6)).margin(1e-12));
    }
}

TEST_CASE("sweep_fringe") {
    CircuitProgram prog;
    prog.kind = CircuitKind::su11_single;
    prog.state_param = 0.8;
    prog.readout.beta = 1.0;
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back(0.1 + i * 0.5);

    SECTION("deterministic without shots") {
        const auto a = sweep_fringe(prog, grid);
        const auto b = sweep_fringe(prog, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            REQUIRE(a.points[i].p_down == b.points[i].p_down);
            REQUIRE(a.points[i].shots == 0);
        }
    }

    SECTION("seeded sampling is reproducible") {
        const auto a = sweep_fringe(prog, grid, 250, 99);
        const auto b = sweep_fringe(prog, grid, 250, 99);
        const auto c = sweep_fringe(prog, grid, 250, 100);
        bool all_equal = true, any_diff = false;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            all_equal = all_equal && a.points[i].p_down == b.points[i].p_down;
            any_diff = any_diff || a.points[i].p_down != c.points[i].p_down;
        }
        REQUIRE(all_equal);
        REQUIRE(any_diff);
    }

    SECTION("grid validation") {
        REQUIRE_THROWS_AS(sweep_fringe(prog, {}), DataError);
        REQUIRE_THROWS_AS(sweep_fringe(prog, {1.0, 1.0}), DataError);
    }
}

TEST_CASE("program validation and probe accounting") {
    CircuitProgram prog;
    prog.kind = CircuitKind::su11_two;
    prog.state_param = -0.1;
    REQUIRE_THROWS_AS(prog.validate(), DomainError);
    prog.state_param = 1.0;
    prog.v0 = 1.0;
    REQUIRE_THROWS_AS(prog.validate(), DomainError);
    prog.v0 = 0.0;

    prog.kind = CircuitKind::su2;
    prog.state_param = 2.0;
    REQUIRE(prog.probe_mean_n() == Approx(4.0));
    prog.kind = CircuitKind::su11_single;
    prog.state_param = 1.0;
    REQUIRE(prog.probe_mean_n() == Approx(std::pow(std::sinh(0.5), 2)));
    prog.kind = CircuitKind::su11_two;
    REQUIRE(prog.probe_mean_n() == Approx(2.0 * std::pow(std::sinh(0.5), 2)));
}

TEST_CASE("analytic fringe model matches the simulator") {
    for (auto kind : {CircuitKind::su2, CircuitKind::su11_single, CircuitKind::su11_two}) {
        CircuitProgram prog;
        prog.kind = kind;
        prog.state_param = (kind == CircuitKind::su2) ? 1.8 : 1.25;
        prog.readout.beta = 1.2;
        prog.phi0 = 0.2;
        prog.v0 = 0.03;
        const auto model = FringeModel::from_program(prog);
        for (double phi : {0.15, 1.1, 2.8, 4.0, 5.9}) {
            REQUIRE(model.p_down(phi) == Approx(run_circuit(prog, phi)).margin(1e-8));
        }
    }
}
