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

#include <functional>

#include "tmsim/errors.hpp"

namespace tmsim {

/// Residual callback: fill r(x) and its Jacobian J = dr/dx.
using ResidualFn =
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd&)>;

struct LsqOptions {
    int max_iter = 200;
    double grad_tol = 1e-11;    // infinity norm of J^T r
    double rel_cost_tol = 1e-15;
    double lambda_init = 1e-3;
    bool check_rank = true;
};

struct LsqResult {
    Eigen::VectorXd x;
    double cost = 0.0; // 0.5 * |r|^2
    Eigen::MatrixXd covariance;
    bool has_covariance = false;
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
};

/// Damped Gauss-Newton (Levenberg-style lambda adaptation) for small dense
/// problems. Residuals are assumed pre-scaled by sqrt(weights), so the
/// covariance of the optimum is (J^T J)^{-1}.
inline LsqResult levenberg_gauss_newton(const ResidualFn& fn, Eigen::VectorXd x0,
                                        const LsqOptions& opts = {}) {
    const int n = static_cast<int>(x0.size());
    Eigen::VectorXd r;
    Eigen::MatrixXd J;
    fn(x0, r, J);
    double cost = 0.5 * r.squaredNorm();
    double lambda = opts.lambda_init;

    if (opts.check_rank) {
        const Eigen::VectorXd colsq = J.colwise().squaredNorm();
        const double cmax = colsq.maxCoeff();
        if (!(cmax > 0) || colsq.minCoeff() < 1e-24 * cmax)
            throw DataError("least_squares: rank-deficient Jacobian "
                            "(a parameter has no effect on the data)");
    }

    LsqResult res;
    res.x = x0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        const Eigen::VectorXd g = J.transpose() * r;
        res.grad_norm = g.lpNorm<Eigen::Infinity>();
        if (res.grad_norm < opts.grad_tol) {
            res.converged = true;
            break;
        }
        const Eigen::MatrixXd jtj = J.transpose() * J;
        const Eigen::VectorXd diag =
            jtj.diagonal().cwiseMax(1e-30 * jtj.diagonal().maxCoeff() + 1e-300);

        bool accepted = false;
        for (int inner = 0; inner < 40; ++inner) {
            Eigen::MatrixXd m = jtj;
            m.diagonal() += lambda * diag;
            const Eigen::VectorXd step = m.ldlt().solve(-g);
            if (step.lpNorm<Eigen::Infinity>() <
                1e-12 * (1.0 + res.x.lpNorm<Eigen::Infinity>())) {
                res.converged = true; // parameter scale exhausted
                accepted = true;
                it = opts.max_iter;
                break;
            }
            const Eigen::VectorXd x_try = res.x + step;
            Eigen::VectorXd r_try;
            Eigen::MatrixXd J_try;
            fn(x_try, r_try, J_try);
            const double cost_try = 0.5 * r_try.squaredNorm();
            if (cost_try < cost) {
                const double rel_drop = (cost - cost_try) / (cost + 1e-300);
                res.x = x_try;
                r = r_try;
                J = J_try;
                cost = cost_try;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                if (rel_drop < opts.rel_cost_tol) {
                    res.converged = true;
                    it = opts.max_iter; // outer loop ends after bookkeeping
                }
                break;
            }
            lambda *= 4.0;
            if (lambda > 1e12) break;
        }
        if (!accepted) {
            // No descending step exists at any damping: a numerical optimum.
            res.converged = true;
            break;
        }
    }

    res.cost = cost;
    res.iterations = std::min(it, opts.max_iter);
    const Eigen::MatrixXd jtj = J.transpose() * J;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (lu.isInvertible()) {
        res.covariance = lu.inverse();
        res.has_covariance = true;
    } else {
        res.covariance = Eigen::MatrixXd::Zero(n, n);
        res.has_covariance = false;
    }
    return res;
}

} // namespace tmsim
