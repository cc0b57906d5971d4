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

#include "tmsim/errors.hpp"

namespace tmsim {

namespace detail {

inline double one_norm(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Evaluates the [m/m] diagonal Pade approximant exp(A) ~ solve(V - U, V + U)
// where U collects the odd and V the even powers with coefficients b.
inline Eigen::MatrixXcd pade_solve(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(v - u).solve(v + u);
}

} // namespace detail

/// Matrix exponential by scaling and squaring with diagonal Pade
/// approximants of order 3/5/7/9/13, selected from the 1-norm of the
/// argument. Accurate to machine precision for any square complex matrix.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw DimensionError("expm: matrix must be square");
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const double norm = detail::one_norm(a);

    const Eigen::MatrixXcd a2 = a * a;
    if (norm <= 1.495585217958292e-2) {
        const double b[] = {120, 60, 12, 1};
        const Eigen::MatrixXcd u = a * (b[3] * a2 + b[1] * id);
        const Eigen::MatrixXcd v = b[2] * a2 + b[0] * id;
        return detail::pade_solve(u, v);
    }
    const Eigen::MatrixXcd a4 = a2 * a2;
    if (norm <= 2.539398330063230e-1) {
        const double b[] = {30240, 15120, 3360, 420, 30, 1};
        const Eigen::MatrixXcd u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
        const Eigen::MatrixXcd v = b[4] * a4 + b[2] * a2 + b[0] * id;
        return detail::pade_solve(u, v);
    }
    const Eigen::MatrixXcd a6 = a4 * a2;
    if (norm <= 9.504178996162932e-1) {
        const double b[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
        const Eigen::MatrixXcd u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        const Eigen::MatrixXcd v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        return detail::pade_solve(u, v);
    }
    if (norm <= 2.097847961257068) {
        const double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                            30270240.0,    2162160.0,    110880.0,     3960.0,
                            90.0,          1.0};
        const Eigen::MatrixXcd a8 = a6 * a2;
        const Eigen::MatrixXcd u =
            a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        const Eigen::MatrixXcd v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        return detail::pade_solve(u, v);
    }

    // Order 13 with scaling: A / 2^s brought under theta_13, then s squarings.
    const double theta13 = 5.371920351148152;
    int s = 0;
    double scaled = norm;
    while (scaled > theta13) {
        scaled *= 0.5;
        ++s;
    }
    const double mult = std::ldexp(1.0, -s);
    const Eigen::MatrixXcd as = a * mult;
    const Eigen::MatrixXcd s2 = as * as;
    const Eigen::MatrixXcd s4 = s2 * s2;
    const Eigen::MatrixXcd s6 = s4 * s2;
    const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                        1187353796428800.0,  129060195264000.0,   10559470521600.0,
                        670442572800.0,      33522128640.0,       1323241920.0,
                        40840800.0,          960960.0,            16380.0,
                        182.0,               1.0};
    const Eigen::MatrixXcd u =
        as * (s6 * (b[13] * s6 + b[11] * s4 + b[9] * s2) + b[7] * s6 + b[5] * s4 +
              b[3] * s2 + b[1] * id);
    const Eigen::MatrixXcd v =
        s6 * (b[12] * s6 + b[10] * s4 + b[8] * s2) + b[6] * s6 + b[4] * s4 + b[2] * s2 +
        b[0] * id;
    Eigen::MatrixXcd r = detail::pade_solve(u, v);
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

} // namespace tmsim
