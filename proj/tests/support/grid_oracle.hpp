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

// Brute-force reference for two-antenna, single-user, single-reflector
// QPSK problems. Deliberately shares no code with the library: its own
// steering vectors, 2x2 algebra and margins.

#ifndef DFRC_TESTS_GRID_ORACLE_HPP
#define DFRC_TESTS_GRID_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace dfrc::testing::oracle {

using c64 = std::complex<double>;
using Vec2 = std::array<c64, 2>;

struct TinyData {
    double mu = 10.0;
    double power = 1000.0;
    double target_deg = 0.0;
    double clutter_deg = 30.0;
    double clutter_b = 1000.0;
    Vec2 h{};                  // raw channel
    double symbol_phase = 0.0;  // arg of the intended QPSK symbol
    double threshold = 0.0;     // sqrt(sigma^2 Gamma)
};

inline Vec2 steer(double deg) {
    const double ph = -std::numbers::pi * std::sin(deg * std::numbers::pi / 180.0);
    const double s = 1.0 / std::sqrt(2.0);
    return {c64{s, 0.0}, std::polar(s, ph)};
}

/// mu (U0 x)^H (b |a_c^T x|^2 a_c a_c^H + I)^{-1} (U0 x)
inline double radar_sinr(const TinyData& d, const Vec2& x) {
    const Vec2 a0 = steer(d.target_deg);
    const Vec2 ac = steer(d.clutter_deg);
    const c64 s0 = a0[0] * x[0] + a0[1] * x[1];
    const c64 sc = ac[0] * x[0] + ac[1] * x[1];
    const double w = d.clutter_b * std::norm(sc);
    // M = w ac ac^H + I, explicit 2x2 inverse
    const double m00 = 1.0 + w * std::norm(ac[0]);
    const double m11 = 1.0 + w * std::norm(ac[1]);
    const c64 m01 = w * ac[0] * std::conj(ac[1]);
    const double det = m00 * m11 - std::norm(m01);
    const Vec2 u{a0[0] * s0, a0[1] * s0};
    // u^H M^{-1} u with M^{-1} = [m11, -m01; -conj(m01), m00] / det
    const double q = m11 * std::norm(u[0]) + m00 * std::norm(u[1]) -
                     2.0 * (std::conj(u[0]) * m01 * u[1]).real();
    return d.mu * q / det;
}

/// Received symbol rotated back onto the positive real axis.
inline c64 rotated(const TinyData& d, const Vec2& x) {
    const c64 y = std::conj(d.h[0]) * x[0] + std::conj(d.h[1]) * x[1];
    return y * std::polar(1.0, -d.symbol_phase);
}

/// QPSK sector margin: (Re - thr) tan(pi/4) - |Im|
inline double margin(const TinyData& d, const Vec2& x) {
    const c64 r = rotated(d, x);
    return (r.real() - d.threshold) - std::abs(r.imag());
}

inline bool feasible(const TinyData& d, const Vec2& x) {
    return std::norm(x[0]) + std::norm(x[1]) <= d.power * (1.0 + 1e-12) && margin(d, x) >= 0.0;
}

/// Coordinates that cover the feasible set exactly. The rotated output is
/// thr + s + j t s with s = sigma * s_max(t); the component orthogonal to h
/// takes a fraction rho of the remaining power, with phase psi.
using Params = std::array<double, 4>;  // sigma, t, rho, psi

inline double channel_norm(const TinyData& d) { return std::sqrt(std::norm(d.h[0]) + std::norm(d.h[1])); }

/// Largest s with |thr + s + j t s|^2 <= ||h||^2 P; negative if infeasible.
inline double s_max(const TinyData& d, double t) {
    const double thr = d.threshold;
    const double cap = std::norm(channel_norm(d)) * d.power;
    const double a = 1.0 + t * t;
    const double disc = thr * thr - a * (thr * thr - cap);
    if (disc < 0.0)
        return -1.0;
    return (-thr + std::sqrt(disc)) / a;
}

inline Vec2 point(const TinyData& d, const Params& p) {
    const double hn = channel_norm(d);
    const double s = p[0] * std::max(s_max(d, p[1]), 0.0);
    const c64 y = c64{d.threshold + s, p[1] * s} * std::polar(1.0, d.symbol_phase);
    const c64 alpha = y / hn;
    const double rest = std::max(d.power - std::norm(alpha), 0.0);
    const c64 beta = std::polar(std::sqrt(p[2] * rest), p[3]);
    const Vec2 hh{d.h[0] / hn, d.h[1] / hn};
    const Vec2 hp{-std::conj(d.h[1]) / hn, std::conj(d.h[0]) / hn};
    return {alpha * hh[0] + beta * hp[0], alpha * hh[1] + beta * hp[1]};
}

struct Result {
    double value = -std::numeric_limits<double>::infinity();
    Vec2 x{};
    bool found = false;
};

struct GridOptions {
    int sigmas = 17;
    int ts = 21;
    int rhos = 17;
    int phases = 48;
    int starts = 8;
    std::uint64_t seed = 7;
};

/// Maximises f over {||x||^2 <= P0, margin >= 0}: dense grid over the box
/// coordinates, then a pattern search with random poll directions from the
/// best grid points.
inline Result maximize(const TinyData& d, const std::function<double(const Vec2&)>& f, GridOptions opt = {}) {
    Result best;
    if (d.threshold * d.threshold > std::norm(channel_norm(d)) * d.power)
        return best;
    const double two_pi = 2.0 * std::numbers::pi;
    struct Cand {
        double v;
        Params p;
    };
    std::vector<Cand> cands;
    for (int i0 = 0; i0 < opt.sigmas; ++i0)
        for (int i1 = 0; i1 < opt.ts; ++i1)
            for (int i2 = 0; i2 < opt.rhos; ++i2)
                for (int i3 = 0; i3 < opt.phases; ++i3) {
                    const Params p{static_cast<double>(i0) / (opt.sigmas - 1),
                                   -1.0 + 2.0 * i1 / (opt.ts - 1), static_cast<double>(i2) / (opt.rhos - 1),
                                   two_pi * i3 / opt.phases};
                    cands.push_back({f(point(d, p)), p});
                }
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(opt.starts), cands.size());
    std::partial_sort(cands.begin(), cands.begin() + static_cast<long>(k), cands.end(),
                      [](const Cand& a, const Cand& b) { return a.v > b.v; });

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    auto clamp = [](Params p) {
        p[0] = std::clamp(p[0], 0.0, 1.0);
        p[1] = std::clamp(p[1], -1.0, 1.0);
        p[2] = std::clamp(p[2], 0.0, 1.0);
        return p;
    };
    const Params unit{1.0, 2.0, 1.0, two_pi};
    for (std::size_t c = 0; c < k; ++c) {
        Params p = cands[c].p;
        double v = cands[c].v;
        double step = 0.05;
        while (step > 1e-11) {
            bool moved = false;
            std::vector<Params> dirs;
            for (int i = 0; i < 4; ++i)
                for (double s : {1.0, -1.0}) {
                    Params e{};
                    e[static_cast<std::size_t>(i)] = s;
                    dirs.push_back(e);
                }
            for (int r = 0; r < 16; ++r) {
                Params e{g(rng), g(rng), g(rng), g(rng)};
                const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3]);
                for (auto& q : e)
                    q /= n;
                dirs.push_back(e);
            }
            for (const auto& e : dirs) {
                Params q = p;
                for (std::size_t i = 0; i < 4; ++i)
                    q[i] += step * unit[i] * e[i];
                q = clamp(q);
                const double fv = f(point(d, q));
                if (fv > v) {
                    v = fv;
                    p = q;
                    moved = true;
                }
            }
            if (!moved)
                step *= 0.5;
        }
        if (v > best.value) {
            best.value = v;
            best.x = point(d, p);
            best.found = true;
        }
    }
    return best;
}

}  // namespace dfrc::testing::oracle

#endif  // DFRC_TESTS_GRID_ORACLE_HPP
