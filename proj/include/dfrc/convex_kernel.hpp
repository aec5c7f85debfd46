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

#ifndef DFRC_CONVEX_KERNEL_HPP
#define DFRC_CONVEX_KERNEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ci_constraints.hpp"
#include "numerics.hpp"
#include "signal_model.hpp"

namespace dfrc {

/// The CI constraint set has no point within the power budget.
class InfeasibleError : public std::runtime_error {
  public:
    InfeasibleError(const std::string& what, std::size_t user, double best_margin)
        : std::runtime_error(what), user_(user), best_margin_(best_margin) {}
    /// user whose margin is most negative at the max-min-margin point
    std::size_t user() const noexcept { return user_; }
    /// largest achievable minimum margin (negative)
    double best_margin() const noexcept { return best_margin_; }

  private:
    std::size_t user_;
    double best_margin_;
};

class RandomizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---- log-barrier interior-point core -----------------------------------

namespace detail {

inline double real_dot(const RealVector& a, const RealVector& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

inline double row_dot(const RealMatrix& a, std::size_t row, const RealVector& z) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        acc += a(row, j) * z[j];
    return acc;
}

/// minimise 1/2 z^T H z + c^T z  s.t.  A z <= b,  ||z[0:ball_dims]||^2 <= radius_sq
struct BarrierProblem {
    const RealMatrix* hessian = nullptr;  // PSD, or null for a linear objective
    RealVector c;
    const RealMatrix* a = nullptr;
    const RealVector* b = nullptr;
    double radius_sq = 0.0;
    std::size_t ball_dims = 0;

    std::size_t n_constraints() const { return b->size() + 1; }

    double objective(const RealVector& z) const {
        double v = real_dot(c, z);
        if (hessian)
            v += 0.5 * real_dot(z, (*hessian) * z);
        return v;
    }
};

struct BarrierOutcome {
    RealVector z;
    double t = 0.0;
    double gap = 0.0;  // m / t duality-gap bound at the last centre
    int newton_steps = 0;
    std::vector<RealVector> centres;  // one per outer iteration
};

struct Slacks {
    RealVector s;
    double r = 0.0;
    bool interior = false;
};

inline Slacks slacks(const BarrierProblem& p, const RealVector& z) {
    Slacks out;
    out.s.resize(p.b->size());
    bool ok = true;
    for (std::size_t j = 0; j < p.b->size(); ++j) {
        out.s[j] = (*p.b)[j] - row_dot(*p.a, j, z);
        ok = ok && out.s[j] > 0.0;
    }
    double nz = 0.0;
    for (std::size_t i = 0; i < p.ball_dims; ++i)
        nz += z[i] * z[i];
    out.r = p.radius_sq - nz;
    out.interior = ok && out.r > 0.0;
    return out;
}

/// Solves H d = -g, adding a growing ridge when H is numerically singular.
inline RealVector newton_direction(RealMatrix hess, const RealVector& grad) {
    double ridge = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < hess.rows(); ++i)
        diag = std::max(diag, hess(i, i));
    for (int attempt = 0; attempt < 12; ++attempt) {
        try {
            RealMatrix h = hess;
            for (std::size_t i = 0; i < h.rows(); ++i)
                h(i, i) += ridge;
            const auto l = cholesky(h);
            auto d = cholesky_solve(l, grad);
            for (auto& e : d)
                e = -e;
            return d;
        } catch (const NumericError&) {
            ridge = ridge == 0.0 ? 1e-14 * std::max(diag, 1e-300) : ridge * 100.0;
        }
    }
    throw NumericError("barrier: Newton system could not be factorised", ridge);
}

/// Path-following log-barrier method with damped Newton centring.
/// `start` must be strictly feasible. Stops when m/t <= gap_tol, or
/// m/t <= rel_tol |objective| at the current centre.
inline BarrierOutcome barrier_minimize(const BarrierProblem& p, RealVector start, double gap_tol,
                                       double t0 = 0.0, bool record_centres = false, double rel_tol = 0.0) {
    const std::size_t n = start.size();
    const std::size_t m = p.b->size();
    const double m_tot = static_cast<double>(p.n_constraints());
    if (!slacks(p, start).interior)
        throw ContractError("barrier_minimize: start point is not strictly feasible");

    if (t0 <= 0.0) {
        double scale = std::sqrt(real_dot(p.c, p.c)) * std::sqrt(p.radius_sq);
        if (p.hessian)
            scale += p.hessian->max_abs() * static_cast<double>(n) * p.radius_sq;
        t0 = m_tot / std::max(scale, 1e-12);
    }

    constexpr double kGrowth = 20.0;
    constexpr int kMaxCentring = 60;
    constexpr int kMaxTotal = 2000;

    BarrierOutcome out;
    out.z = std::move(start);
    double t = t0;
    while (true) {
        for (int it = 0; it < kMaxCentring; ++it) {
            const auto sl = slacks(p, out.z);
            RealVector grad(n, 0.0);
            RealMatrix hess(n, n);
            for (std::size_t i = 0; i < n; ++i)
                grad[i] = t * p.c[i];
            if (p.hessian) {
                const auto hz = (*p.hessian) * out.z;
                for (std::size_t i = 0; i < n; ++i) {
                    grad[i] += t * hz[i];
                    for (std::size_t j = 0; j < n; ++j)
                        hess(i, j) = t * (*p.hessian)(i, j);
                }
            }
            for (std::size_t k = 0; k < m; ++k) {
                const double inv = 1.0 / sl.s[k];
                const double inv2 = inv * inv;
                for (std::size_t i = 0; i < n; ++i) {
                    const double ai = (*p.a)(k, i);
                    if (ai == 0.0)
                        continue;
                    grad[i] += ai * inv;
                    for (std::size_t j = 0; j < n; ++j)
                        hess(i, j) += ai * (*p.a)(k, j) * inv2;
                }
            }
            const double ir = 1.0 / sl.r;
            for (std::size_t i = 0; i < p.ball_dims; ++i) {
                grad[i] += 2.0 * out.z[i] * ir;
                hess(i, i) += 2.0 * ir;
                for (std::size_t j = 0; j < p.ball_dims; ++j)
                    hess(i, j) += 4.0 * out.z[i] * out.z[j] * ir * ir;
            }

            const auto d = newton_direction(hess, grad);
            const double dec2 = -real_dot(grad, d);
            const double dec = std::sqrt(std::max(dec2, 0.0));
            if (dec <= 1e-7)
                break;
            // Damped step keeps the iterate inside the Dikin ellipsoid.
            double alpha = dec > 0.25 ? 1.0 / (1.0 + dec) : 1.0;
            RealVector trial(n);
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t i = 0; i < n; ++i)
                    trial[i] = out.z[i] + alpha * d[i];
                if (slacks(p, trial).interior)
                    break;
                alpha *= 0.5;
            }
            if (!slacks(p, trial).interior)
                break;
            out.z = trial;
            if (++out.newton_steps > kMaxTotal)
                throw NumericError("barrier: Newton iteration cap reached", m_tot / t);
        }
        if (record_centres)
            out.centres.push_back(out.z);
        out.t = t;
        out.gap = m_tot / t;
        if (out.gap <= gap_tol || out.gap <= rel_tol * std::abs(p.objective(out.z)))
            break;
        t *= kGrowth;
    }
    return out;
}

}  // namespace detail

// ---- feasible region with cached interior point --------------------------

/// Real-form CI region {||z||^2 <= P0, A z <= b} together with a strictly
/// interior point found by a phase-1 max-min-margin problem.
class CiRegion {
  public:
    static CiRegion build(const CiConstraintSet& cs) {
        CiRegion rg;
        rg.hs_ = half_spaces(cs);
        rg.radius_sq_ = cs.power_budget;
        rg.dim_ = 2 * cs.dim;
        rg.interior_ = RealVector(rg.dim_, 0.0);
        if (rg.hs_.size() == 0) {
            rg.best_margin_ = std::numeric_limits<double>::infinity();
            return rg;
        }
        rg.run_phase_one();
        return rg;
    }

    const HalfSpaces& half_spaces_() const noexcept { return hs_; }
    double radius_sq() const noexcept { return radius_sq_; }
    std::size_t dim() const noexcept { return dim_; }
    /// strictly feasible point (empty interior: the max-min-margin point)
    const RealVector& interior_point() const noexcept { return interior_; }
    /// max over the ball of the minimum CI slack
    double best_margin() const noexcept { return best_margin_; }
    bool has_interior() const noexcept { return best_margin_ > 0.0; }

    detail::BarrierProblem problem(const RealVector& c, const RealMatrix* hessian = nullptr) const {
        detail::BarrierProblem p;
        p.hessian = hessian;
        p.c = c;
        p.a = &hs_.a;
        p.b = &hs_.b;
        p.radius_sq = radius_sq_;
        p.ball_dims = dim_;
        return p;
    }

    double slack(std::size_t j, const RealVector& z) const { return hs_.b[j] - detail::row_dot(hs_.a, j, z); }

    bool contains(const RealVector& z, double tol = kFeasibilityTol) const {
        if (radius_sq_ - detail::real_dot(z, z) < -tol)
            return false;
        for (std::size_t j = 0; j < hs_.size(); ++j)
            if (slack(j, z) < -tol)
                return false;
        return true;
    }

  private:
    void run_phase_one() {
        const std::size_t m = hs_.size();
        // variables (z, s): maximise s subject to a_j^T z + s <= b_j
        phase_a_ = RealMatrix(m, dim_ + 1);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < dim_; ++i)
                phase_a_(j, i) = hs_.a(j, i);
            phase_a_(j, dim_) = 1.0;
        }
        detail::BarrierProblem p;
        p.c = RealVector(dim_ + 1, 0.0);
        p.c[dim_] = -1.0;
        p.a = &phase_a_;
        p.b = &hs_.b;
        p.radius_sq = radius_sq_;
        p.ball_dims = dim_;

        RealVector start(dim_ + 1, 0.0);
        start[dim_] = *std::min_element(hs_.b.begin(), hs_.b.end()) - 1.0;
        double bscale = 1.0;
        for (double v : hs_.b)
            bscale = std::max(bscale, std::abs(v));
        const double row_scale = hs_.a.max_abs() * std::sqrt(radius_sq_ * static_cast<double>(dim_));
        const double t0 = static_cast<double>(m + 1) / std::max(bscale + row_scale, 1e-12);
        const auto res = detail::barrier_minimize(p, start, 1e-10 * (bscale + row_scale), t0, true);

        const auto& zs = res.z;
        RealVector z(zs.begin(), zs.begin() + static_cast<std::ptrdiff_t>(dim_));
        double worst = std::numeric_limits<double>::infinity();
        std::size_t worst_row = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const double sj = slack(j, z);
            if (sj < worst) {
                worst = sj;
                worst_row = j;
            }
        }
        best_margin_ = worst;
        if (worst < -1e-7) {
            throw InfeasibleError("CI constraints infeasible within the power budget: user " +
                                      std::to_string(hs_.user[worst_row]) + " margin cannot exceed " +
                                      std::to_string(worst),
                                  hs_.user[worst_row], worst);
        }
        if (worst <= 0.0) {
            interior_ = z;
            return;
        }
        // A well-centred point with at least half the optimal margin.
        for (const auto& c : res.centres) {
            RealVector zc(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(dim_));
            double mm = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < m; ++j)
                mm = std::min(mm, slack(j, zc));
            if (mm >= 0.5 * worst && radius_sq_ - detail::real_dot(zc, zc) > 0.0) {
                interior_ = zc;
                return;
            }
        }
        interior_ = z;
    }

    HalfSpaces hs_;
    RealMatrix phase_a_;
    double radius_sq_ = 0.0;
    std::size_t dim_ = 0;
    RealVector interior_;
    double best_margin_ = 0.0;
};

// ---- linear objective ---------------------------------------------------

/// minimise Re(c^H x)
struct LinearObjective {
    ComplexVector c;
};

struct LinearSolveOptions {
    double tol = 1e-10;            // relative duality-gap target
    bool closed_form_ball = true;  // K = 0 shortcut
    bool polish = true;            // active-set refinement of the barrier point
};

namespace detail {

/// Re-solves exactly on the active set identified by the barrier solution:
/// affine subspace of active rows, intersected with the sphere when the
/// power constraint is active. Returns nothing when identification fails.
inline std::optional<RealVector> polish_linear(const CiRegion& rg, const RealVector& c, const RealVector& zb) {
    const auto& hs = rg.half_spaces_();
    const std::size_t n = rg.dim();
    const double rad = std::sqrt(rg.radius_sq());

    std::vector<RealVector> q;  // orthonormal basis of active row space
    RealVector w;               // coordinates of the min-norm point
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < hs.size(); ++j) {
        double an = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            an += hs.a(j, i) * hs.a(j, i);
        an = std::sqrt(an);
        const double sc = an * rad + std::abs(hs.b[j]) + 1e-300;
        if (rg.slack(j, zb) <= 1e-6 * sc)
            active.push_back(j);
    }
    // Gram-Schmidt with forward substitution: a_j = sum_k L_jk q_k.
    for (std::size_t j : active) {
        RealVector v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = hs.a(j, i);
        const double vn0 = std::sqrt(real_dot(v, v));
        double rhs = hs.b[j];
        for (std::size_t k = 0; k < q.size(); ++k) {
            const double coef = real_dot(q[k], v);
            for (std::size_t i = 0; i < n; ++i)
                v[i] -= coef * q[k][i];
            rhs -= coef * w[k];
        }
        for (std::size_t k = 0; k < q.size(); ++k) {  // re-orthogonalise
            const double coef = real_dot(q[k], v);
            for (std::size_t i = 0; i < n; ++i)
                v[i] -= coef * q[k][i];
        }
        const double vn = std::sqrt(real_dot(v, v));
        if (vn <= 1e-10 * vn0)
            continue;  // dependent row; consistency is checked below
        for (auto& e : v)
            e /= vn;
        q.push_back(v);
        w.push_back(rhs / vn);
    }
    RealVector zp(n, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            zp[i] += w[k] * q[k][i];

    const double rb = rg.radius_sq() - real_dot(zb, zb);
    const bool ball_active = rb <= 1e-6 * rg.radius_sq();
    RealVector z;
    if (ball_active) {
        RealVector d(c);
        for (auto& e : d)
            e = -e;
        for (const auto& qk : q) {
            const double coef = real_dot(qk, d);
            for (std::size_t i = 0; i < n; ++i)
                d[i] -= coef * qk[i];
        }
        const double dn = std::sqrt(real_dot(d, d));
        const double rho2 = rg.radius_sq() - real_dot(zp, zp);
        if (dn <= 1e-12 * std::sqrt(real_dot(c, c)) || rho2 < 0.0)
            return std::nullopt;
        const double rho = std::sqrt(rho2);
        z = zp;
        for (std::size_t i = 0; i < n; ++i)
            z[i] += rho * d[i] / dn;
    } else {
        if (q.size() != n)
            return std::nullopt;
        z = zp;
    }

    for (std::size_t j = 0; j < hs.size(); ++j) {
        double an = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            an += hs.a(j, i) * hs.a(j, i);
        const double sc = std::sqrt(an) * rad + std::abs(hs.b[j]);
        if (rg.slack(j, z) < -1e-13 * sc)
            return std::nullopt;
    }
    if (real_dot(z, z) > rg.radius_sq() * (1.0 + 1e-13))
        return std::nullopt;
    const double fz = real_dot(c, z);
    const double fb = real_dot(c, zb);
    if (fz > fb + 1e-12 * (1.0 + std::abs(fb)))
        return std::nullopt;
    return z;
}

}  // namespace detail

/// minimise Re(c^H x) over the CI set within the power ball.
inline ComplexVector solve_linear_over_ci(const LinearObjective& objective, const CiRegion& rg,
                                          const LinearSolveOptions& opt = {}) {
    const std::size_t n = rg.dim() / 2;
    if (objective.c.size() != n)
        throw ContractError("solve_linear_over_ci: objective length mismatch");
    if (!all_finite<cplx>(objective.c))
        throw ContractError("solve_linear_over_ci: non-finite objective");
    const RealVector c = to_real(objective.c);
    const double cn = std::sqrt(detail::real_dot(c, c));
    const double rad = std::sqrt(rg.radius_sq());

    if (rg.half_spaces_().size() == 0 && opt.closed_form_ball) {
        if (cn == 0.0)
            return ComplexVector(n, cplx{});
        return scaled(objective.c, -rad / cn);
    }
    if (cn == 0.0 || !rg.has_interior())
        return to_complex(rg.interior_point());

    const auto p = rg.problem(c);
    const auto res = detail::barrier_minimize(p, rg.interior_point(), opt.tol * (1.0 + cn * rad));
    if (opt.polish)
        if (auto z = detail::polish_linear(rg, c, res.z))
            return to_complex(*z);
    return to_complex(res.z);
}

inline ComplexVector solve_linear_over_ci(const LinearObjective& objective, const CiConstraintSet& cs,
                                          double tol = 1e-10) {
    return solve_linear_over_ci(objective, CiRegion::build(cs), LinearSolveOptions{tol, true, true});
}

// ---- concave quadratic --------------------------------------------------

/// maximise x^H Q x for negative semidefinite Q over the CI set.
inline ComplexVector solve_concave_qp_over_ci(const ComplexMatrix& q, const CiRegion& rg, double tol = 1e-10) {
    const std::size_t n = rg.dim() / 2;
    if (q.rows() != n || q.cols() != n)
        throw ContractError("solve_concave_qp_over_ci: matrix shape mismatch");
    const auto eig = herm_eig(q);
    if (eig.values.front() > 1e-10 * std::max(1.0, q.max_abs()))
        throw ContractError("solve_concave_qp_over_ci: matrix is not negative semidefinite (max eigenvalue " +
                            std::to_string(eig.values.front()) + ")");
    if (!rg.has_interior())
        return to_complex(rg.interior_point());
    RealMatrix h = real_representation(q);
    h *= -2.0;
    if (h.max_abs() == 0.0)
        return to_complex(rg.interior_point());
    const auto p = rg.problem(RealVector(rg.dim(), 0.0), &h);
    // gap relative to the attained value; a bound over the whole ball is far
    // too loose once the budget is large
    const auto res = detail::barrier_minimize(p, rg.interior_point(), tol, 0.0, false, tol);
    return to_complex(res.z);
}

/// Nearest point of the CI set to x (Euclidean), used for feasibility repair.
inline ComplexVector project_onto_ci(const ComplexVector& x, const CiRegion& rg, double tol = 1e-12) {
    const RealVector z0 = to_real(x);
    if (rg.contains(z0, 0.0))
        return x;
    if (!rg.has_interior())
        return to_complex(rg.interior_point());
    RealMatrix h = RealMatrix::identity(rg.dim());
    h *= 2.0;
    RealVector c(z0);
    for (auto& e : c)
        e *= -2.0;
    const auto p = rg.problem(c, &h);
    const auto res = detail::barrier_minimize(p, rg.interior_point(), tol * (1.0 + rg.radius_sq()));
    return to_complex(res.z);
}

// ---- semidefinite relaxation --------------------------------------------

struct SdpSolution {
    ComplexMatrix x_tilde;  // [[X, x], [x^H, 1]]
    ComplexMatrix x_block;  // X
    ComplexVector x;        // first-order part
    ComplexMatrix phi;      // objective matrix the relaxation was solved for
    double objective = 0.0;         // dual value: certified upper bound on tr(X Phi)
    double primal_objective = 0.0;  // tr(X Phi) of the recovered primal point
    struct Residuals {
        double primal = 0.0;
        double dual = 0.0;
        double gap = 0.0;
    } kkt_residuals;

    /// lambda_1(X) / tr(X)
    double top_eigenvalue_ratio() const {
        const double tr = x_block.trace().real();
        if (tr <= 0.0)
            return 1.0;
        return herm_eig(x_block).values.front() / tr;
    }
};

/// maximise tr(X Phi) s.t. tr(X) <= P0, CI half-spaces on x, [[X, x],[x^H, 1]] >= 0.
///
/// Solved through its Lagrange dual, which after eliminating the Schur
/// complement is the smooth convex program
///   min_{eta > lambda_max, nu >= 0}  eta P0 + b^T nu + 1/4 g^H (eta I - Phi)^{-1} g,
///   g = sum_j nu_j alpha_j,
/// in 1 + (#half-spaces) variables. Every dual iterate is a valid upper bound.
/// The primal point is x = -(eta I - Phi)^{-1} g / 2 plus trace mass on the
/// top eigenspace of Phi for the remaining power.
inline SdpSolution solve_sdr(const ComplexMatrix& phi, const CiRegion& rg, double tol = 1e-9) {
    const std::size_t n = rg.dim() / 2;
    if (phi.rows() != n || phi.cols() != n)
        throw ContractError("solve_sdr: matrix shape mismatch");
    if (n > 16)
        throw ContractError("solve_sdr: relaxation is limited to n_tx <= 16");
    const auto eig = herm_eig(phi);
    if (eig.values.back() < -1e-10 * std::max(1.0, std::abs(eig.values.front())))
        throw ContractError("solve_sdr: matrix is not positive semidefinite");
    const auto& hs = rg.half_spaces_();
    const std::size_t m = hs.size();
    const double p0 = rg.radius_sq();
    const double lmax = eig.values.front();
    const double escale = std::max(std::abs(lmax), 1e-300);

    // alpha_j in the eigenbasis: a_j^T z = Re(alpha_j^H x)
    std::vector<ComplexVector> ah(m, ComplexVector(n));
    const auto vh = eig.vectors.adjoint();
    for (std::size_t j = 0; j < m; ++j) {
        ComplexVector al(n);
        for (std::size_t i = 0; i < n; ++i)
            al[i] = {hs.a(j, i), hs.a(j, n + i)};
        ah[j] = vh * al;
    }

    const std::size_t nv = 1 + m;
    struct Eval {
        double value;
        RealVector grad;
        RealMatrix hess;
        ComplexVector ghat;
        RealVector d;
    };
    auto evaluate = [&](const RealVector& y, bool derivs) {
        Eval e{0.0, {}, {}, ComplexVector(n, cplx{}), RealVector(n)};
        const double eta = y[0];
        for (std::size_t i = 0; i < n; ++i)
            e.d[i] = 1.0 / (eta - eig.values[i]);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i)
                e.ghat[i] += y[1 + j] * ah[j][i];
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            q += 0.25 * e.d[i] * std::norm(e.ghat[i]);
        e.value = eta * p0 + q;
        for (std::size_t j = 0; j < m; ++j)
            e.value += hs.b[j] * y[1 + j];
        if (!derivs)
            return e;
        e.grad = RealVector(nv, 0.0);
        e.hess = RealMatrix(nv, nv);
        e.grad[0] = p0;
        double h00 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            e.grad[0] -= 0.25 * e.d[i] * e.d[i] * std::norm(e.ghat[i]);
            h00 += 0.5 * e.d[i] * e.d[i] * e.d[i] * std::norm(e.ghat[i]);
        }
        e.hess(0, 0) = h00;
        for (std::size_t j = 0; j < m; ++j) {
            double gj = hs.b[j];
            double hj0 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double re = (std::conj(ah[j][i]) * e.ghat[i]).real();
                gj += 0.5 * e.d[i] * re;
                hj0 -= 0.5 * e.d[i] * e.d[i] * re;
            }
            e.grad[1 + j] = gj;
            e.hess(0, 1 + j) = hj0;
            e.hess(1 + j, 0) = hj0;
            for (std::size_t l = j; l < m; ++l) {
                double hjl = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    hjl += 0.5 * e.d[i] * (std::conj(ah[j][i]) * ah[l][i]).real();
                e.hess(1 + j, 1 + l) = hjl;
                e.hess(1 + l, 1 + j) = hjl;
            }
        }
        return e;
    };
    auto in_domain = [&](const RealVector& y) {
        if (!(y[0] - lmax > 0.0))
            return false;
        for (std::size_t j = 0; j < m; ++j)
            if (!(y[1 + j] > 0.0))
                return false;
        return true;
    };

    RealVector y(nv, 0.0);
    y[0] = lmax + escale;
    for (std::size_t j = 0; j < m; ++j)
        y[1 + j] = escale / std::sqrt(p0);
    const double m_tot = static_cast<double>(nv);
    double t = m_tot / std::max(std::abs(evaluate(y, false).value), 1e-300);
    int steps = 0;
    while (true) {
        for (int it = 0; it < 80; ++it) {
            auto e = evaluate(y, true);
            RealVector grad(nv);
            RealMatrix hess = e.hess;
            hess *= t;
            for (std::size_t k = 0; k < nv; ++k) {
                const double slack = k == 0 ? y[0] - lmax : y[k];
                grad[k] = t * e.grad[k] - 1.0 / slack;
                hess(k, k) += 1.0 / (slack * slack);
            }
            const auto d = detail::newton_direction(hess, grad);
            const double dec = std::sqrt(std::max(-detail::real_dot(grad, d), 0.0));
            if (dec <= 1e-7)
                break;
            double alpha = dec > 0.25 ? 1.0 / (1.0 + dec) : 1.0;
            RealVector trial(nv);
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t k = 0; k < nv; ++k)
                    trial[k] = y[k] + alpha * d[k];
                if (in_domain(trial))
                    break;
                alpha *= 0.5;
            }
            if (!in_domain(trial))
                break;
            y = trial;
            if (++steps > 4000)
                throw NumericError("solve_sdr: Newton iteration cap reached", m_tot / t);
        }
        const double dual_value = evaluate(y, false).value;
        if (m_tot / t <= tol * (1.0 + std::abs(dual_value)))
            break;
        t *= 20.0;
    }

    const auto fin = evaluate(y, false);
    SdpSolution sol;
    sol.phi = phi;
    sol.objective = fin.value;
    ComplexVector dg(n);
    for (std::size_t i = 0; i < n; ++i)
        dg[i] = -0.5 * fin.d[i] * fin.ghat[i];
    sol.x = eig.vectors * dg;
    const double top_mass = std::max(1.0 / (t * (y[0] - lmax)), 0.0);
    sol.x_block = ComplexMatrix::outer(sol.x, sol.x);
    std::size_t mult = 0;
    for (double v : eig.values)
        if (v >= lmax - 1e-9 * escale)
            ++mult;
    for (std::size_t k = 0; k < mult; ++k) {
        const auto v = eig.vectors.col(k);
        sol.x_block += ComplexMatrix::outer(v, v) * cplx{top_mass / static_cast<double>(mult)};
    }
    sol.x_tilde = ComplexMatrix(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            sol.x_tilde(i, j) = sol.x_block(i, j);
        sol.x_tilde(i, n) = sol.x[i];
        sol.x_tilde(n, i) = std::conj(sol.x[i]);
    }
    sol.x_tilde(n, n) = 1.0;
    sol.primal_objective = (sol.x_block * phi).trace().real();

    const RealVector z = to_real(sol.x);
    double primal = std::max(0.0, sol.x_block.trace().real() - p0) / p0;
    for (std::size_t j = 0; j < m; ++j)
        primal = std::max(primal, -rg.slack(j, z) / (1.0 + std::abs(hs.b[j])));
    sol.kkt_residuals.primal = primal;
    sol.kkt_residuals.dual = 0.0;  // eta > lambda_max and nu > 0 by construction
    sol.kkt_residuals.gap = (sol.objective - sol.primal_objective) / (1.0 + std::abs(sol.objective));
    return sol;
}

inline SdpSolution solve_sdr(const ComplexMatrix& phi, const CiConstraintSet& cs, double tol = 1e-9) {
    return solve_sdr(phi, CiRegion::build(cs), tol);
}

/// Best-of-n Gaussian randomisation around an SDR solution. Candidates are
/// x + C^{1/2} xi with C = psd(X - x x^H); each is pulled onto the power ball
/// if outside and discarded if CI-infeasible. Falls back to the nearest
/// feasible point to x when every candidate fails.
inline ComplexVector gaussian_randomization(const SdpSolution& sol, const CiRegion& rg, std::size_t n_samples,
                                            std::uint64_t rng_seed) {
    if (n_samples == 0)
        throw ContractError("gaussian_randomization: n_samples must be positive");
    const std::size_t n = sol.x.size();
    const auto cov = psd_project(sol.x_block - ComplexMatrix::outer(sol.x, sol.x));
    const auto ce = herm_eig(cov);
    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double p0 = rg.radius_sq();

    std::optional<ComplexVector> best;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n_samples; ++s) {
        ComplexVector xi(n);
        for (auto& e : xi)
            e = {gauss(rng), gauss(rng)};
        ComplexVector cand = sol.x;
        for (std::size_t k = 0; k < n; ++k) {
            const double lam = std::max(ce.values[k], 0.0);
            if (lam == 0.0)
                continue;
            const cplx coef = std::sqrt(lam) * xi[k];
            for (std::size_t i = 0; i < n; ++i)
                cand[i] += coef * ce.vectors(i, k);
        }
        const double pw = norm_sq(cand);
        if (pw > p0)
            cand = scaled(cand, std::sqrt(p0 / pw) * (1.0 - 1e-12));
        // candidates are built, not repaired, so hold them to exact feasibility
        if (!rg.contains(to_real(cand), 0.0))
            continue;
        const double val = quad_form(sol.phi, cand, cand).real();
        if (val > best_val) {
            best_val = val;
            best = std::move(cand);
        }
    }
    if (best)
        return *best;

    ComplexVector fallback = sol.x;
    const double pw = norm_sq(fallback);
    if (pw > p0)
        fallback = scaled(fallback, std::sqrt(p0 / pw) * (1.0 - 1e-12));
    if (!rg.contains(to_real(fallback), 0.0))
        fallback = project_onto_ci(fallback, rg);
    if (!rg.contains(to_real(fallback)))
        throw RandomizationError("gaussian_randomization: no feasible candidate after restoration");
    return fallback;
}

// ---- line searches -------------------------------------------------------

/// Exact minimiser over t in [0, 1] of -(x + t d)^H Phi (x + t d). The
/// function is concave in t, so the answer is an endpoint.
inline double exact_linesearch_fixed_phi(const ComplexMatrix& phi, const ComplexVector& x, const ComplexVector& d) {
    if (norm_sq(d) == 0.0)
        return 0.0;
    const double lin = 2.0 * quad_form(phi, x, d).real();
    const double quad = quad_form(phi, d, d).real();
    // f(1) - f(0) = -(lin + quad)
    return lin + quad > 0.0 ? 1.0 : 0.0;
}

struct ArmijoResult {
    double step = 0.0;
    bool stalled = false;
    double objective = 0.0;  // f at the accepted point
};

/// Backtracking on f(x) = -mu x^H Phi(x) x along d.
inline ArmijoResult armijo_linesearch_true_objective(const Scenario& sc, const ComplexVector& x,
                                                     const ComplexVector& d, double shrink = 0.5,
                                                     double slope = 0.1) {
    if (!(shrink > 0.0 && shrink < 1.0) || !(slope > 0.0 && slope < 1.0))
        throw ContractError("armijo: shrink and slope must lie in (0, 1)");
    const auto obj = sinr_objective(sc, x);
    const double f0 = -sc.mu() * obj.value;
    if (norm_sq(d) == 0.0)
        return {0.0, false, f0};
    const double deriv = -sc.mu() * dot(obj.gradient, d).real();
    if (!(deriv < 0.0))
        return {0.0, true, f0};
    constexpr double kFloor = 1e-6;
    for (double t = 1.0; t >= kFloor; t *= shrink) {
        const double ft = -sc.mu() * sinr_objective(sc, x + scaled(d, t), false).value;
        if (ft <= f0 + slope * t * deriv)
            return {t, false, ft};
    }
    return {0.0, true, f0};
}

// ---- random feasible points ---------------------------------------------

/// Hit-and-run sampler over the CI set, started from its interior point.
class FeasibleSampler {
  public:
    // keeps a pointer to the region
    FeasibleSampler(CiRegion&&, std::uint64_t, std::size_t = 8) = delete;
    FeasibleSampler(const CiRegion& rg, std::uint64_t seed, std::size_t thinning = 8)
        : rg_(&rg), rng_(seed), z_(rg.interior_point()), thinning_(thinning) {
        if (!rg.has_interior())
            throw ContractError("FeasibleSampler: CI set has empty interior");
        for (int i = 0; i < 200; ++i)
            step();
    }

    ComplexVector next() {
        for (std::size_t i = 0; i < thinning_; ++i)
            step();
        return to_complex(z_);
    }

  private:
    void step() {
        const std::size_t n = z_.size();
        RealVector d(n);
        std::normal_distribution<double> gauss;
        double dn = 0.0;
        for (auto& e : d) {
            e = gauss(rng_);
            dn += e * e;
        }
        dn = std::sqrt(dn);
        for (auto& e : d)
            e /= dn;
        const double zd = detail::real_dot(z_, d);
        const double zz = detail::real_dot(z_, z_);
        const double disc = std::sqrt(std::max(zd * zd - (zz - rg_->radius_sq()), 0.0));
        double lo = -zd - disc;
        double hi = -zd + disc;
        const auto& hs = rg_->half_spaces_();
        for (std::size_t j = 0; j < hs.size(); ++j) {
            const double ad = detail::row_dot(hs.a, j, d);
            const double s = rg_->slack(j, z_);
            if (ad > 0.0)
                hi = std::min(hi, s / ad);
            else if (ad < 0.0)
                lo = std::max(lo, s / ad);
        }
        if (!(hi > lo))
            return;
        std::uniform_real_distribution<double> uni(lo, hi);
        const double t = uni(rng_);
        for (std::size_t i = 0; i < n; ++i)
            z_[i] += t * d[i];
    }

    const CiRegion* rg_;
    std::mt19937_64 rng_;
    RealVector z_;
    std::size_t thinning_;
};

}  // namespace dfrc

#endif  // DFRC_CONVEX_KERNEL_HPP
