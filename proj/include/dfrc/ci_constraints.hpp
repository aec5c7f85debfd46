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

#ifndef DFRC_CI_CONSTRAINTS_HPP
#define DFRC_CI_CONSTRAINTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "numerics.hpp"
#include "signal_model.hpp"

namespace dfrc {

/// Margins at or above -kFeasibilityTol count as satisfied.
inline constexpr double kFeasibilityTol = 1e-9;

/// M-PSK symbol e^{j(2m-1)pi/M}, m in 1..M.
struct PskSymbol {
    int order = 4;
    int index = 1;
    cplx value{1.0, 0.0};

    bool operator==(const PskSymbol& o) const { return order == o.order && index == o.index; }
};

inline PskSymbol make_psk(int order, int index) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw ContractError("make_psk: order must be a power of two >= 2");
    if (index < 1 || index > order)
        throw ContractError("make_psk: index out of range");
    const double phase = (2.0 * index - 1.0) * std::numbers::pi / order;
    return {order, index, std::polar(1.0, phase)};
}

/// Hard-decision M-PSK detector. Sector m covers arg(y) in
/// [2(m-1)pi/M, 2m pi/M); returns nullopt for y = 0.
inline std::optional<PskSymbol> decode_psk(cplx y, int order) {
    if (y == cplx{})
        return std::nullopt;
    const double two_pi = 2.0 * std::numbers::pi;
    double ang = std::arg(y);
    if (ang < 0.0)
        ang += two_pi;
    int m = static_cast<int>(std::floor(ang / (two_pi / order))) + 1;
    m = std::clamp(m, 1, order);
    return make_psk(order, m);
}

/// Per-user rotated channels and the CI half-space description, plus the
/// power ball.
struct CiConstraintSet {
    std::vector<ComplexVector> rotated_channels;  // h_k s_k^*
    std::vector<double> thresholds;               // sqrt(sigma_k^2 Gamma_k)
    std::vector<double> gammas;                   // Gamma_k, linear
    std::vector<double> noise_vars;               // sigma_k^2
    double tan_phi = 1.0;                         // tan(pi/M); +inf for BPSK
    double power_budget = 0.0;
    int psk_order = 4;
    std::size_t dim = 0;  // n_tx

    std::size_t n_users() const noexcept { return rotated_channels.size(); }
    bool is_bpsk() const noexcept { return psk_order == 2; }
};

inline CiConstraintSet build_constraints(const Scenario& sc, const std::vector<ComplexVector>& channels,
                                         const std::vector<PskSymbol>& symbols, const std::vector<double>& gammas) {
    const std::size_t k = channels.size();
    if (symbols.size() != k || gammas.size() != k)
        throw ContractError("build_constraints: channels, symbols and gammas differ in length");
    if (sc.n_users() != k)
        throw ContractError("build_constraints: scenario has " + std::to_string(sc.n_users()) +
                            " users but " + std::to_string(k) + " channels were given");
    CiConstraintSet cs;
    cs.power_budget = sc.power_budget;
    cs.psk_order = sc.psk_order;
    cs.tan_phi = sc.psk_order == 2 ? std::numeric_limits<double>::infinity()
                                   : std::tan(std::numbers::pi / sc.psk_order);
    cs.dim = sc.n_tx;
    for (std::size_t u = 0; u < k; ++u) {
        if (channels[u].size() != sc.n_tx)
            throw ContractError("build_constraints: channel length mismatch");
        if (symbols[u].order != sc.psk_order)
            throw ContractError("build_constraints: symbol order differs from scenario");
        if (!(gammas[u] >= 0.0))
            throw ContractError("build_constraints: SNR thresholds must be non-negative");
        // h~^H x = h^H x s^*  <=>  h~ = h s
        // (conjugating s^* through the Hermitian product).
        cs.rotated_channels.push_back(scaled(channels[u], symbols[u].value));
        cs.noise_vars.push_back(sc.user_noise_vars[u]);
        cs.gammas.push_back(gammas[u]);
        cs.thresholds.push_back(std::sqrt(sc.user_noise_vars[u] * gammas[u]));
    }
    return cs;
}

/// Noise-free received symbol of user k after de-rotation, h~_k^H x.
inline cplx rotated_output(const CiConstraintSet& cs, std::size_t k, const ComplexVector& x) {
    return dot(cs.rotated_channels.at(k), x);
}

/// Signed distance-like CI margin of user k: (Re - thr) tan(phi) - |Im|,
/// or Re - thr for BPSK.
inline double ci_margin(const CiConstraintSet& cs, std::size_t k, cplx y_rot) {
    if (cs.is_bpsk())
        return y_rot.real() - cs.thresholds[k];
    return (y_rot.real() - cs.thresholds[k]) * cs.tan_phi - std::abs(y_rot.imag());
}

struct FeasibilityReport {
    bool feasible = false;
    std::vector<double> per_user_margins;
    double power_margin = 0.0;  // P0 - ||x||^2

    double min_margin() const {
        double m = power_margin;
        for (double v : per_user_margins)
            m = std::min(m, v);
        return m;
    }
};

inline FeasibilityReport check_feasible(const CiConstraintSet& cs, const ComplexVector& x) {
    if (x.size() != cs.dim)
        throw ContractError("check_feasible: waveform length mismatch");
    FeasibilityReport r;
    r.power_margin = cs.power_budget - norm_sq(x);
    bool ok = r.power_margin >= -kFeasibilityTol;
    for (std::size_t k = 0; k < cs.n_users(); ++k) {
        const double m = ci_margin(cs, k, rotated_output(cs, k, x));
        r.per_user_margins.push_back(m);
        ok = ok && m >= -kFeasibilityTol;
    }
    r.feasible = ok;
    return r;
}

/// SNR_k >= Gamma_k (up to 1e-9 relative), implied by CI feasibility since
/// |h^H x| = |h~^H x| >= Re(h~^H x) >= threshold.
inline bool ci_implies_snr(const CiConstraintSet& cs, const ComplexVector& x, std::size_t k) {
    const double snr = std::norm(rotated_output(cs, k, x)) / cs.noise_vars.at(k);
    return snr >= cs.gammas[k] * (1.0 - 1e-9);
}

/// Real-form half-spaces a_j^T z <= b_j on z = [Re x; Im x]. Two per user,
/// one for BPSK. Slack b_j - a_j^T z equals the user's margin on the
/// binding side.
struct HalfSpaces {
    RealMatrix a;  // m x 2n
    RealVector b;
    std::vector<std::size_t> user;  // owning user of each row

    std::size_t size() const noexcept { return b.size(); }
};

inline HalfSpaces half_spaces(const CiConstraintSet& cs) {
    const std::size_t n = cs.dim;
    const std::size_t per_user = cs.is_bpsk() ? 1 : 2;
    HalfSpaces hs{RealMatrix(per_user * cs.n_users(), 2 * n), {}, {}};
    std::size_t row = 0;
    for (std::size_t k = 0; k < cs.n_users(); ++k) {
        const auto& h = cs.rotated_channels[k];
        // Re(h^H x) = hr.xr + hi.xi,  Im(h^H x) = hr.xi - hi.xr
        RealVector re(2 * n), im(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            re[i] = h[i].real();
            re[n + i] = h[i].imag();
            im[i] = -h[i].imag();
            im[n + i] = h[i].real();
        }
        if (cs.is_bpsk()) {
            for (std::size_t j = 0; j < 2 * n; ++j)
                hs.a(row, j) = -re[j];
            hs.b.push_back(-cs.thresholds[k]);
            hs.user.push_back(k);
            ++row;
            continue;
        }
        for (double sign : {1.0, -1.0}) {
            // -tan(phi) Re +/- Im <= -tan(phi) thr
            for (std::size_t j = 0; j < 2 * n; ++j)
                hs.a(row, j) = -cs.tan_phi * re[j] + sign * im[j];
            hs.b.push_back(-cs.tan_phi * cs.thresholds[k]);
            hs.user.push_back(k);
            ++row;
        }
    }
    return hs;
}

}  // namespace dfrc

#endif  // DFRC_CI_CONSTRAINTS_HPP
