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

#ifndef DFRC_SIGNAL_MODEL_HPP
#define DFRC_SIGNAL_MODEL_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace dfrc {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Target return in a field of discrete clutter reflectors is undefined when
/// the transmit waveform puts nothing toward the target.
class DegenerateGeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Physical parameters of one DFRC deployment. All powers are linear and
/// normalised so that the radar receiver noise is the unit of power.
struct Scenario {
    std::size_t n_tx = 8;
    std::size_t n_rx = 8;
    double target_angle = 0.0;  // rad
    double target_power = 10.0;
    std::vector<double> clutter_angles;  // rad
    std::vector<double> clutter_powers;
    double radar_noise_var = 1.0;
    std::vector<double> user_noise_vars;
    double power_budget = 1000.0;
    int psk_order = 4;

    std::size_t n_users() const noexcept { return user_noise_vars.size(); }
    std::size_t n_clutter() const noexcept { return clutter_angles.size(); }

    /// target-to-noise ratio
    double mu() const noexcept { return target_power / radar_noise_var; }
    /// clutter-to-noise ratio of reflector i
    double b(std::size_t i) const { return clutter_powers.at(i) / radar_noise_var; }

    void validate() const {
        auto fail = [](const std::string& m) { throw ContractError("scenario: " + m); };
        const double half_pi = std::numbers::pi / 2.0;
        if (n_tx == 0 || n_rx == 0)
            fail("antenna counts must be positive");
        if (n_tx > 64 || n_rx > 64)
            fail("antenna counts above 64 are not supported");
        if (!(target_power > 0.0) || !(radar_noise_var > 0.0) || !(power_budget > 0.0))
            fail("powers and variances must be positive");
        if (!(std::abs(target_angle) < half_pi))
            fail("target angle must lie in (-pi/2, pi/2)");
        if (clutter_angles.size() != clutter_powers.size())
            fail("clutter angle and power lists differ in length");
        for (std::size_t i = 0; i < clutter_angles.size(); ++i) {
            if (!(std::abs(clutter_angles[i]) < half_pi))
                fail("clutter angle must lie in (-pi/2, pi/2)");
            if (!(clutter_powers[i] > 0.0))
                fail("clutter powers must be positive");
        }
        for (double s : user_noise_vars)
            if (!(s > 0.0))
                fail("user noise variances must be positive");
        if (psk_order < 2 || (psk_order & (psk_order - 1)) != 0)
            fail("PSK order must be a power of two >= 2");
    }

    /// Deployment used throughout the numerical study: 8x8 ULA, target at
    /// broadside (10 dB), four 30 dB clutter reflectors, P0 = 30 dBm, QPSK.
    static Scenario reference(std::size_t n_tx = 8, std::size_t n_users = 5) {
        Scenario s;
        s.n_tx = n_tx;
        s.n_rx = n_tx;
        s.target_angle = 0.0;
        s.target_power = db_to_linear(10.0);
        s.clutter_angles = {deg_to_rad(-50.0), deg_to_rad(-20.0), deg_to_rad(20.0), deg_to_rad(50.0)};
        s.clutter_powers = std::vector<double>(4, db_to_linear(30.0));
        s.radar_noise_var = 1.0;
        s.user_noise_vars = std::vector<double>(n_users, 1.0);
        s.power_budget = db_to_linear(30.0);
        s.psk_order = 4;
        return s;
    }
};

// ---- steering ----------------------------------------------------------

/// Half-wavelength ULA response (1/sqrt(n)) [1, e^{-j pi sin t}, ...].
inline ComplexVector ula_steering(std::size_t n, double angle) {
    ComplexVector a(n);
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    const double k = -std::numbers::pi * std::sin(angle);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = std::polar(inv, k * static_cast<double>(i));
    return a;
}

inline ComplexVector steering_tx(const Scenario& sc, double angle) { return ula_steering(sc.n_tx, angle); }
inline ComplexVector steering_rx(const Scenario& sc, double angle) { return ula_steering(sc.n_rx, angle); }

struct SteeringMatrix {
    double angle = 0.0;
    ComplexMatrix matrix;  // n_rx x n_tx
};

/// U(angle) = a_r a_t^T. Note the plain transpose on the transmit side.
inline SteeringMatrix steering_matrix(const Scenario& sc, double angle) {
    const auto ar = steering_rx(sc, angle);
    const auto at = steering_tx(sc, angle);
    SteeringMatrix u{angle, ComplexMatrix(sc.n_rx, sc.n_tx)};
    for (std::size_t r = 0; r < sc.n_rx; ++r)
        for (std::size_t c = 0; c < sc.n_tx; ++c)
            u.matrix(r, c) = ar[r] * at[c];
    return u;
}

/// a^T x (no conjugation)
inline cplx transpose_dot(const ComplexVector& a, const ComplexVector& x) {
    if (a.size() != x.size())
        throw ContractError("transpose_dot: dimension mismatch");
    cplx acc{};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * x[i];
    return acc;
}

// ---- radar statistics --------------------------------------------------

struct RadarStats {
    ComplexMatrix sigma_x;  // Sigma(x), n_rx x n_rx
    ComplexMatrix phi_x;    // Phi(x), n_tx x n_tx
    double mu = 0.0;
    std::vector<double> b;
};

namespace detail {
inline void check_waveform(const Scenario& sc, const ComplexVector& x) {
    if (x.size() != sc.n_tx)
        throw ContractError("waveform length " + std::to_string(x.size()) + " does not match n_tx " +
                            std::to_string(sc.n_tx));
}
}  // namespace detail

/// Sigma(x) = sum_i b_i U_i x x^H U_i^H.
inline ComplexMatrix clutter_covariance(const Scenario& sc, const ComplexVector& x) {
    detail::check_waveform(sc, x);
    ComplexMatrix sigma(sc.n_rx, sc.n_rx);
    for (std::size_t i = 0; i < sc.n_clutter(); ++i) {
        // U_i x = a_r(t_i) (a_t(t_i)^T x)
        const cplx s = transpose_dot(steering_tx(sc, sc.clutter_angles[i]), x);
        const auto ar = steering_rx(sc, sc.clutter_angles[i]);
        const double w = sc.b(i) * std::norm(s);
        for (std::size_t r = 0; r < sc.n_rx; ++r)
            for (std::size_t c = 0; c < sc.n_rx; ++c)
                sigma(r, c) += w * ar[r] * std::conj(ar[c]);
    }
    return sigma;
}

inline ComplexMatrix interference_plus_noise(const Scenario& sc, const ComplexVector& x) {
    return clutter_covariance(sc, x) + ComplexMatrix::identity(sc.n_rx);
}

/// Phi(x) = U_0^H [Sigma(x) + I]^{-1} U_0.
inline ComplexMatrix sinr_matrix(const Scenario& sc, const ComplexVector& x) {
    const auto u0 = steering_matrix(sc, sc.target_angle).matrix;
    const auto solved = herm_solve(interference_plus_noise(sc, x), u0);
    auto phi = u0.adjoint() * solved;
    // exact Hermitian symmetry
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        phi(i, i) = phi(i, i).real();
        for (std::size_t j = i + 1; j < phi.cols(); ++j) {
            const cplx avg = 0.5 * (phi(i, j) + std::conj(phi(j, i)));
            phi(i, j) = avg;
            phi(j, i) = std::conj(avg);
        }
    }
    return phi;
}

inline RadarStats radar_stats(const Scenario& sc, const ComplexVector& x) {
    RadarStats st{clutter_covariance(sc, x), sinr_matrix(sc, x), sc.mu(), {}};
    for (std::size_t i = 0; i < sc.n_clutter(); ++i)
        st.b.push_back(sc.b(i));
    return st;
}

/// Clutter-free SINR matrix U_0^H U_0. Dominates Phi(x) for every x.
inline ComplexMatrix clutter_free_sinr_matrix(const Scenario& sc) {
    const auto u0 = steering_matrix(sc, sc.target_angle).matrix;
    return u0.adjoint() * u0;
}

// ---- beamforming and SINR ----------------------------------------------

/// MVDR receive filter for waveform x; unit gain toward the target.
inline ComplexVector mvdr_beamformer(const Scenario& sc, const ComplexVector& x) {
    detail::check_waveform(sc, x);
    const auto u0x = steering_matrix(sc, sc.target_angle).matrix * x;
    const auto v = herm_solve(interference_plus_noise(sc, x), u0x);
    const double denom = dot(u0x, v).real();
    if (!(denom >= 1e-12))
        throw DegenerateGeometryError("mvdr_beamformer: waveform places no energy on the target");
    return scaled(v, 1.0 / denom);
}

/// mu |w^H U_0 x|^2 / (w^H (Sigma(x) + I) w)
inline double sinr_rad(const Scenario& sc, const ComplexVector& x, const ComplexVector& w) {
    detail::check_waveform(sc, x);
    if (w.size() != sc.n_rx)
        throw ContractError("sinr_rad: receive filter length mismatch");
    if (norm_sq(w) == 0.0)
        throw ContractError("sinr_rad: zero receive filter");
    const auto u0x = steering_matrix(sc, sc.target_angle).matrix * x;
    const double num = std::norm(dot(w, u0x));
    const double den = quad_form(interference_plus_noise(sc, x), w, w).real();
    return sc.mu() * num / den;
}

/// x^H Phi(x) x together with its gradient. `gradient` is the complex
/// vector c with dF = Re(c^H dx); it includes the dependence of Phi on x.
struct SinrObjective {
    double value = 0.0;
    ComplexVector gradient;
};

inline SinrObjective sinr_objective(const Scenario& sc, const ComplexVector& x, bool with_gradient = true) {
    detail::check_waveform(sc, x);
    const auto u0 = steering_matrix(sc, sc.target_angle).matrix;
    const auto u0x = u0 * x;
    const auto v = herm_solve(interference_plus_noise(sc, x), u0x);
    SinrObjective out;
    out.value = std::max(dot(u0x, v).real(), 0.0);
    if (!with_gradient)
        return out;
    out.gradient = u0.adjoint() * v;
    for (std::size_t i = 0; i < sc.n_clutter(); ++i) {
        const auto ui = steering_matrix(sc, sc.clutter_angles[i]).matrix;
        const auto uiv = ui.adjoint() * v;
        const cplx beta = dot(v, ui * x);
        for (std::size_t k = 0; k < x.size(); ++k)
            out.gradient[k] -= sc.b(i) * beta * uiv[k];
    }
    for (auto& g : out.gradient)
        g *= 2.0;
    return out;
}

/// Radar SINR (linear) reached with the MVDR filter: mu x^H Phi(x) x.
inline double optimal_sinr(const Scenario& sc, const ComplexVector& x) {
    return sc.mu() * sinr_objective(sc, x, false).value;
}

// ---- communication ------------------------------------------------------

/// |h^H x|^2 / noise_var
inline double snr_user(double noise_var, const ComplexVector& h, const ComplexVector& x) {
    return std::norm(dot(h, x)) / noise_var;
}

inline double snr_user(const Scenario& sc, std::size_t k, const ComplexVector& h, const ComplexVector& x) {
    return snr_user(sc.user_noise_vars.at(k), h, x);
}

/// Average transmit power |a_t(t)^T x|^2 over a set of waveforms.
inline std::vector<double> transmit_beampattern(const Scenario& sc, const std::vector<ComplexVector>& waveforms,
                                                const std::vector<double>& angles) {
    if (waveforms.empty())
        throw ContractError("transmit_beampattern: no waveforms");
    std::vector<double> out(angles.size(), 0.0);
    for (std::size_t a = 0; a < angles.size(); ++a) {
        const auto at = steering_tx(sc, angles[a]);
        double acc = 0.0;
        for (const auto& x : waveforms) {
            detail::check_waveform(sc, x);
            acc += std::norm(transpose_dot(at, x));
        }
        out[a] = acc / static_cast<double>(waveforms.size());
    }
    return out;
}

}  // namespace dfrc

#endif  // DFRC_SIGNAL_MODEL_HPP
