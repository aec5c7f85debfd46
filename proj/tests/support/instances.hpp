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

#ifndef DFRC_TESTS_INSTANCES_HPP
#define DFRC_TESTS_INSTANCES_HPP

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <dfrc/dfrc.hpp>
#include <dfrc/harness.hpp>

#include "grid_oracle.hpp"

namespace dfrc::testing {

/// Problem data for one solver run, owning its constraint set.
struct Problem {
    Scenario sc;
    Instance inst;
    CiConstraintSet cs;
};

/// Reference deployment, draw (c, s) of the given master seed.
inline Problem reference_problem(std::uint64_t master, std::size_t c, double gamma_db = 15.0,
                                 std::size_t n_tx = 8, std::size_t n_users = 5, std::size_t s = 0) {
    Problem p{Scenario::reference(n_tx, n_users), {}, {}};
    p.inst = draw_instance(p.sc, master, c, s);
    p.cs = instance_constraints(p.sc, p.inst, gamma_db);
    return p;
}

inline ComplexVector random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale * std::sqrt(0.5));
    ComplexVector v(n);
    for (auto& e : v)
        e = {g(rng), g(rng)};
    return v;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = g(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = {g(rng), g(rng)};
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

/// N_T = N_R = 2, one user, one reflector, QPSK, random geometry.
struct TinyInstance {
    Problem problem;
    oracle::TinyData data;
};

inline TinyInstance tiny_instance(std::uint64_t seed, double gamma_db = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> side(10.0, 75.0);
    std::bernoulli_distribution sign(0.5);
    std::uniform_int_distribution<int> sym(1, 4);

    Scenario sc = Scenario::reference(2, 1);
    const double clutter_deg = (sign(rng) ? 1.0 : -1.0) * side(rng);
    sc.clutter_angles = {deg_to_rad(clutter_deg)};
    sc.clutter_powers = {db_to_linear(30.0)};

    TinyInstance t;
    t.problem.sc = sc;
    t.problem.inst.channels = {random_vector(2, rng)};
    t.problem.inst.symbols = {make_psk(4, sym(rng))};
    t.problem.cs = instance_constraints(sc, t.problem.inst, gamma_db);

    auto& d = t.data;
    d.mu = sc.mu();
    d.power = sc.power_budget;
    d.target_deg = 0.0;
    d.clutter_deg = clutter_deg;
    d.clutter_b = sc.b(0);
    d.h = {t.problem.inst.channels[0][0], t.problem.inst.channels[0][1]};
    d.symbol_phase = (2.0 * t.problem.inst.symbols[0].index - 1.0) * std::numbers::pi / 4.0;
    d.threshold = std::sqrt(db_to_linear(gamma_db));
    return t;
}

/// Relative agreement |a - b| / max(|a|, |b|, floor).
inline double rel_diff(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace dfrc::testing

#endif  // DFRC_TESTS_INSTANCES_HPP
