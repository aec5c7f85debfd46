// SPDX-License-Identifier: Apache-2.0
//
// dfrc-ci: constructive-interference waveform design for dual-functional
// radar-communication transmitters
// Copyright (C) 2026 The dfrc-ci authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DFRC_SOLVERS_HPP
#define DFRC_SOLVERS_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ci_constraints.hpp"
#include "convex_kernel.hpp"
#include "numerics.hpp"
#include "signal_model.hpp"

namespace dfrc {

enum class Method { SQ, SDR, SCA };
enum class LineSearch { exact_fixed_phi, armijo };
enum class SolverStatus { converged, iter_cap, stalled, infeasible };

inline std::string_view to_string(Method m) {
    switch (m) {
    case Method::SQ: return "SQ";
    case Method::SDR: return "SDR";
    case Method::SCA: return "SCA";
    }
    return "?";
}

inline std::string_view to_string(SolverStatus s) {
    switch (s) {
    case SolverStatus::converged: return "converged";
    case SolverStatus::iter_cap: return "iter_cap";
    case SolverStatus::stalled: return "stalled";
    case SolverStatus::infeasible: return "infeasible";
    }
    return "?";
}

struct SolverConfig {
    Method method = Method::SCA;
    std::size_t max_outer_iters = 200;
    double conv_tol = 1e-5;  // SCA: |g|; SQ/SDR: relative objective change uses sqsdr_tol
    LineSearch linesearch = LineSearch::armijo;
    std::size_t randomization_samples = 100;
    std::uint64_t rng_seed = 1;
    std::optional<ComplexVector> init;  // Remark-1 point when empty
    double sq_lambda_scale = 1.0;       // lambda = scale * lambda_max(Phi)
    double sqsdr_tol = 1e-6;
    double lmo_tol = 1e-10;

    void validate() const {
        if (!(conv_tol > 0.0))
            throw ContractError("solver config: conv_tol must be positive");
        if (max_outer_iters < 1)
            throw ContractError("solver config: max_outer_iters must be at least 1");
        if (!(sq_lambda_scale >= 1.0))
            throw ContractError("solver config: sq_lambda_scale must be >= 1");
        if (method == Method::SDR && randomization_samples < 1)
            throw ContractError("solver config: randomization_samples must be positive");
    }
};

struct TraceEntry {
    std::size_t iteration = 0;
    double objective = 0.0;  // f = -mu x^H Phi(x) x
    double sinr = 0.0;       // linear, -objective
    double step = 0.0;
    double gap = 0.0;
    double min_margin = 0.0;
};

struct SolverResult {
    ComplexVector x_opt;
    ComplexVector w_opt;
    double sinr_rad = 0.0;  // linear
    std::vector<TraceEntry> trace;
    SolverStatus status = SolverStatus::infeasible;
    double wall_time = 0.0;  // s
    // SDR only: certified bound on mu x^H Phi(x) x over the feasible set,
    // and the relaxation value at the final SOA linearisation.
    std::optional<double> upper_bound;
    std::optional<double> relaxation_objective;
    std::size_t infeasible_user = 0;
    double infeasible_margin = 0.0;
};

namespace detail {

inline double min_ci_margin(const CiConstraintSet& cs, const ComplexVector& x) {
    return check_feasible(cs, x).min_margin();
}

inline TraceEntry make_entry(const Scenario& sc, const CiConstraintSet& cs, std::size_t it, const ComplexVector& x,
                             double step, double gap) {
    const double sinr = optimal_sinr(sc, x);
    return {it, -sinr, sinr, step, gap, min_ci_margin(cs, x)};
}

inline void finish(const Scenario& sc, SolverResult& r, std::chrono::steady_clock::time_point t0) {
    r.w_opt = mvdr_beamformer(sc, r.x_opt);
    r.sinr_rad = sinr_rad(sc, r.x_opt, r.w_opt);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline SolverResult infeasible_result(const InfeasibleError& e, std::chrono::steady_clock::time_point t0) {
    SolverResult r;
    r.status = SolverStatus::infeasible;
    r.infeasible_user = e.user();
    r.infeasible_margin = e.best_margin();
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline NumericError with_iteration(const NumericError& e, std::size_t it) {
    return NumericError(std::string(e.what()) + " (iteration " + std::to_string(it) + ")", e.residual());
}

}  // namespace detail

/// Maximises sum_p Re(x_p) over the CI set: the LMO with c = -1.
inline ComplexVector sca_initialize(const CiRegion& rg) {
    const std::size_t n = rg.dim() / 2;
    return solve_linear_over_ci({ComplexVector(n, cplx{-1.0, 0.0})}, rg);
}

inline ComplexVector sca_initialize(const CiConstraintSet& cs) { return sca_initialize(CiRegion::build(cs)); }

namespace detail {

inline ComplexVector initial_point(const CiConstraintSet& cs, const CiRegion& rg, const SolverConfig& cfg) {
    if (!cfg.init)
        return sca_initialize(rg);
    if (cfg.init->size() != cs.dim)
        throw ContractError("solver config: custom init has wrong length");
    if (!check_feasible(cs, *cfg.init).feasible)
        throw ContractError("solver config: custom init is not CI-feasible");
    return *cfg.init;
}

/// Single loop: Phi(x) refreshed every iteration, true gradient, Armijo.
inline SolverResult sca_single_loop(const Scenario& sc, const CiConstraintSet& cs, const CiRegion& rg,
                                    const SolverConfig& cfg) {
    SolverResult r;
    ComplexVector x = initial_point(cs, rg, cfg);
    r.trace.push_back(make_entry(sc, cs, 0, x, 0.0, 0.0));
    r.status = SolverStatus::iter_cap;
    const LinearSolveOptions lopt{cfg.lmo_tol, true, true};
    for (std::size_t it = 1; it <= cfg.max_outer_iters; ++it) {
        try {
            const auto obj = sinr_objective(sc, x);
            // f = -x^H Phi(x) x, grad f = -c
            ComplexVector grad = obj.gradient;
            for (auto& e : grad)
                e = -e;
            const auto xs = solve_linear_over_ci({grad}, rg, lopt);
            const auto d = xs - x;
            const double gap = dot(grad, d).real();
            if (std::abs(gap) < cfg.conv_tol) {
                r.trace.back().gap = gap;
                r.status = SolverStatus::converged;
                break;
            }
            const auto ls = armijo_linesearch_true_objective(sc, x, d);
            if (ls.stalled) {
                r.trace.back().gap = gap;
                r.status = SolverStatus::stalled;
                break;
            }
            x = x + scaled(d, ls.step);
            r.trace.push_back(make_entry(sc, cs, it, x, ls.step, gap));
        } catch (const NumericError& e) {
            throw with_iteration(e, it);
        }
    }
    r.x_opt = std::move(x);
    return r;
}

/// Two loops: Phi frozen in the inner Frank-Wolfe loop with exact endpoint
/// line search, refreshed in the outer loop.
inline SolverResult sca_two_loop(const Scenario& sc, const CiConstraintSet& cs, const CiRegion& rg,
                                 const SolverConfig& cfg) {
    SolverResult r;
    ComplexVector x = initial_point(cs, rg, cfg);
    r.trace.push_back(make_entry(sc, cs, 0, x, 0.0, 0.0));
    r.status = SolverStatus::iter_cap;
    const LinearSolveOptions lopt{cfg.lmo_tol, true, true};
    std::size_t it = 0;
    double prev = optimal_sinr(sc, x);
    while (it < cfg.max_outer_iters) {
        const auto phi = radar_stats(sc, x).phi_x;
        double last_gap = 0.0;
        bool inner_done = false;
        while (it < cfg.max_outer_iters) {
            ++it;
            ComplexVector grad = phi * x;
            for (auto& e : grad)
                e *= -2.0;
            const auto xs = solve_linear_over_ci({grad}, rg, lopt);
            const auto d = xs - x;
            last_gap = dot(grad, d).real();
            if (std::abs(last_gap) < cfg.conv_tol) {
                inner_done = true;
                break;
            }
            const double step = exact_linesearch_fixed_phi(phi, x, d);
            if (step == 0.0) {
                inner_done = true;
                break;
            }
            x = x + scaled(d, step);
            r.trace.push_back(make_entry(sc, cs, it, x, step, last_gap));
        }
        const double cur = optimal_sinr(sc, x);
        r.trace.back().gap = last_gap;
        if (inner_done && std::abs(cur - prev) <= cfg.sqsdr_tol * std::max(std::abs(prev), 1e-300)) {
            r.status = SolverStatus::converged;
            break;
        }
        prev = cur;
    }
    r.x_opt = std::move(x);
    return r;
}

}  // namespace detail

inline SolverResult sca_solve(const Scenario& sc, const CiConstraintSet& cs, const SolverConfig& cfg) {
    if (cfg.method != Method::SCA)
        throw ContractError("sca_solve: config method is not SCA");
    cfg.validate();
    sc.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<CiRegion> rg;
    try {
        rg.emplace(CiRegion::build(cs));
    } catch (const InfeasibleError& e) {
        return detail::infeasible_result(e, t0);
    }
    SolverResult r = cfg.linesearch == LineSearch::armijo ? detail::sca_single_loop(sc, cs, *rg, cfg)
                                                          : detail::sca_two_loop(sc, cs, *rg, cfg);
    detail::finish(sc, r, t0);
    return r;
}

namespace detail {

/// With lambda = lambda_max the top eigenvector v of Phi spans a null
/// direction of Phi - lambda I, so the QP argmax is a face. Among its points,
/// step along v (at the phase of v^H x) until a constraint binds; this keeps
/// the QP value and raises x^H Phi x.
inline ComplexVector fill_top_eigendirection(const ComplexMatrix& phi, const CiRegion& rg, const ComplexVector& x) {
    const auto eig = herm_eig(phi);
    ComplexVector v = eig.vectors.col(0);
    const cplx a = dot(v, x);
    if (std::abs(a) > 0.0)
        v = scaled(v, a / std::abs(a));
    const RealVector z = to_real(x);
    const RealVector dz = to_real(v);
    const double zd = detail::real_dot(z, dz);
    const double room = rg.radius_sq() - detail::real_dot(z, z);
    double s = -zd + std::sqrt(std::max(zd * zd + room, 0.0));
    const auto& hs = rg.half_spaces_();
    for (std::size_t j = 0; j < hs.size(); ++j) {
        const double ad = detail::row_dot(hs.a, j, dz);
        if (ad > 0.0)
            s = std::min(s, rg.slack(j, z) / ad);
    }
    if (!(s > 0.0))
        return x;
    return x + scaled(v, s);
}

}  // namespace detail

/// Sequential QCQP: maximise x^H (Phi - lambda I) x with Phi frozen at the
/// current point, lambda = scale * lambda_max(Phi).
inline SolverResult sq_solve(const Scenario& sc, const CiConstraintSet& cs, const SolverConfig& cfg) {
    if (cfg.method != Method::SQ)
        throw ContractError("sq_solve: config method is not SQ");
    cfg.validate();
    sc.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<CiRegion> rg;
    try {
        rg.emplace(CiRegion::build(cs));
    } catch (const InfeasibleError& e) {
        return detail::infeasible_result(e, t0);
    }
    SolverResult r;
    ComplexVector x = detail::initial_point(cs, *rg, cfg);
    r.trace.push_back(detail::make_entry(sc, cs, 0, x, 0.0, 0.0));
    r.status = SolverStatus::iter_cap;
    double prev = r.trace.back().sinr;
    for (std::size_t it = 1; it <= cfg.max_outer_iters; ++it) {
        try {
            auto q = radar_stats(sc, x).phi_x;
            const double lam = cfg.sq_lambda_scale * lambda_max(q);
            const auto phi = q;
            for (std::size_t i = 0; i < q.rows(); ++i)
                q(i, i) -= lam;
            x = solve_concave_qp_over_ci(q, *rg, cfg.lmo_tol);
            if (cfg.sq_lambda_scale == 1.0)
                x = detail::fill_top_eigendirection(phi, *rg, x);
        } catch (const NumericError& e) {
            throw detail::with_iteration(e, it);
        }
        r.trace.push_back(detail::make_entry(sc, cs, it, x, 1.0, 0.0));
        const double cur = r.trace.back().sinr;
        if (std::abs(cur - prev) <= cfg.sqsdr_tol * std::max(std::abs(prev), 1e-300)) {
            r.status = SolverStatus::converged;
            break;
        }
        prev = cur;
    }
    r.x_opt = std::move(x);
    detail::finish(sc, r, t0);
    return r;
}

/// SOA loop over the semidefinite relaxation. `upper_bound` is the
/// relaxation of the clutter-free majorant U0^H U0 >= Phi(x), which bounds
/// mu x^H Phi(x) x for every feasible x; `relaxation_objective` is the
/// relaxation value at the last frozen Phi.
inline SolverResult sdr_solve(const Scenario& sc, const CiConstraintSet& cs, const SolverConfig& cfg) {
    if (cfg.method != Method::SDR)
        throw ContractError("sdr_solve: config method is not SDR");
    cfg.validate();
    sc.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<CiRegion> rg;
    try {
        rg.emplace(CiRegion::build(cs));
    } catch (const InfeasibleError& e) {
        return detail::infeasible_result(e, t0);
    }
    SolverResult r;
    r.upper_bound = sc.mu() * solve_sdr(clutter_free_sinr_matrix(sc), *rg).objective;
    ComplexVector x = detail::initial_point(cs, *rg, cfg);
    r.trace.push_back(detail::make_entry(sc, cs, 0, x, 0.0, 0.0));
    r.status = SolverStatus::iter_cap;
    double prev = r.trace.back().sinr;
    for (std::size_t it = 1; it <= cfg.max_outer_iters; ++it) {
        try {
            const auto phi = radar_stats(sc, x).phi_x;
            const auto sol = solve_sdr(phi, *rg);
            r.relaxation_objective = sc.mu() * sol.objective;
            ComplexVector cand;
            if (sol.top_eigenvalue_ratio() > 0.999) {
                // rank one: X ~ l v v^H, phase taken from the first-order block
                const auto eig = herm_eig(sol.x_block);
                cand = scaled(eig.vectors.col(0), std::sqrt(std::max(eig.values.front(), 0.0)));
                const cplx a = dot(cand, sol.x);
                if (std::abs(a) > 0.0)
                    cand = scaled(cand, a / std::abs(a));
                const double pw = norm_sq(cand);
                if (pw > cs.power_budget)
                    cand = scaled(cand, std::sqrt(cs.power_budget / pw) * (1.0 - 1e-12));
                if (!rg->contains(to_real(cand), 0.0))
                    cand = project_onto_ci(cand, *rg);
            } else {
                cand = gaussian_randomization(sol, *rg, cfg.randomization_samples, cfg.rng_seed + it);
            }
            x = std::move(cand);
        } catch (const RandomizationError&) {
            r.status = SolverStatus::stalled;
            break;
        } catch (const NumericError& e) {
            throw detail::with_iteration(e, it);
        }
        r.trace.push_back(detail::make_entry(sc, cs, it, x, 1.0, 0.0));
        const double cur = r.trace.back().sinr;
        if (std::abs(cur - prev) <= cfg.sqsdr_tol * std::max(std::abs(prev), 1e-300)) {
            r.status = SolverStatus::converged;
            break;
        }
        prev = cur;
    }
    r.x_opt = std::move(x);
    detail::finish(sc, r, t0);
    return r;
}

inline SolverResult solve(const Scenario& sc, const CiConstraintSet& cs, const SolverConfig& cfg) {
    switch (cfg.method) {
    case Method::SQ: return sq_solve(sc, cs, cfg);
    case Method::SDR: return sdr_solve(sc, cs, cfg);
    case Method::SCA: return sca_solve(sc, cs, cfg);
    }
    throw ContractError("solve: unknown method");
}

}  // namespace dfrc

#endif  // DFRC_SOLVERS_HPP
