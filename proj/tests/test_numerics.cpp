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

#include <catch_amalgamated.hpp>

#include "instances.hpp"

using namespace dfrc;
using dfrc::testing::random_hermitian;
using dfrc::testing::random_vector;

namespace {

ComplexMatrix diag(std::initializer_list<double> d) {
    const std::vector<double> v(d);
    return ComplexMatrix::diagonal(v);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("herm_eig on identity and diagonal inputs", "[numerics]") {
    const auto e1 = herm_eig(ComplexMatrix::identity(3));
    REQUIRE(e1.values.size() == 3);
    for (double v : e1.values)
        CHECK(v == Catch::Approx(1.0).margin(1e-14));

    const auto e2 = herm_eig(diag({3.0, 1.0, 2.0}));
    CHECK(e2.values[0] == Catch::Approx(3.0).margin(1e-14));
    CHECK(e2.values[1] == Catch::Approx(2.0).margin(1e-14));
    CHECK(e2.values[2] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices", "[numerics]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_hermitian(8, rng);
        const auto e = herm_eig(a);
        CHECK(max_abs_diff(e.reconstruct(), a) < 1e-8);
        for (std::size_t i = 1; i < e.values.size(); ++i)
            CHECK(e.values[i - 1] >= e.values[i]);
        // orthonormal columns
        const auto vhv = e.vectors.adjoint() * e.vectors;
        CHECK(max_abs_diff(vhv, ComplexMatrix::identity(8)) < 1e-10);
    }
}

TEST_CASE("herm_eig rejects bad input", "[numerics]") {
    CHECK_THROWS_AS(herm_eig(ComplexMatrix(2, 3)), ContractError);
    ComplexMatrix a(2, 2);
    a(0, 1) = {1.0, 0.0};
    CHECK_THROWS_AS(herm_eig(a), ContractError);
    ComplexMatrix nan_m = ComplexMatrix::identity(2);
    nan_m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(herm_eig(nan_m));
}

TEST_CASE("herm_solve small cases", "[numerics]") {
    std::mt19937_64 rng(3);
    const auto b = random_vector(5, rng);
    const auto x = herm_solve(ComplexMatrix::identity(5), b);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(x[i] - b[i]) < 1e-15);

    const auto y = herm_solve(ComplexMatrix::identity(2) * cplx{2.0, 0.0}, ComplexVector{{1.0, 0.0}, {0.0, 0.0}});
    CHECK(std::abs(y[0] - cplx{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(y[1]) < 1e-15);
}

TEST_CASE("herm_solve on the clutter covariance of the reference deployment", "[numerics]") {
    const auto p = dfrc::testing::reference_problem(5, 0);
    const auto rg = CiRegion::build(p.cs);
    FeasibleSampler smp(rg, 17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = smp.next();
        const auto a = interference_plus_noise(p.sc, x);
        const auto rhs = steering_matrix(p.sc, p.sc.target_angle).matrix * x;
        const auto v = herm_solve(a, rhs);
        const auto res = a * v - rhs;
        CHECK(norm(res) / norm(rhs) < 1e-9);
    }
}

TEST_CASE("herm_solve and cholesky reject indefinite matrices", "[numerics]") {
    const auto a = diag({1.0, -1.0});
    CHECK_THROWS_AS(cholesky(a), NumericError);
    CHECK_THROWS_AS(herm_solve(a, ComplexVector{{1.0, 0.0}, {1.0, 0.0}}), NumericError);
    CHECK_THROWS_AS(herm_solve(ComplexMatrix::identity(2), ComplexVector(3)), ContractError);
}

TEST_CASE("psd_project fixed point and clipping", "[numerics]") {
    std::mt19937_64 rng(5);
    ComplexMatrix b(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            b(i, j) = random_vector(1, rng)[0];
    const auto psd = b * b.adjoint();
    CHECK(max_abs_diff(psd_project(psd), psd) < 1e-10);

    const auto clipped = psd_project(diag({1.0, -1.0}));
    CHECK(max_abs_diff(clipped, diag({1.0, 0.0})) < 1e-14);
}

TEST_CASE("psd_project is the Frobenius-nearest PSD matrix among sampled competitors", "[numerics]") {
    std::mt19937_64 rng(9);
    const auto a = random_hermitian(6, rng);
    const auto p = psd_project(a);
    CHECK(herm_eig(p).values.back() >= -1e-10);
    const double best = (a - p).frobenius();

    // competitors C C^H with C a random perturbation of a square root of p
    const auto e = herm_eig(p);
    ComplexMatrix root(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 6; ++k)
            root(i, k) = e.vectors(i, k) * std::sqrt(std::max(e.values[k], 0.0));
    for (int trial = 0; trial < 100; ++trial) {
        auto c = root;
        const double scale = 0.3 * std::pow(10.0, -trial % 4);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t k = 0; k < 6; ++k)
                c(i, k) += random_vector(1, rng, scale)[0];
        const auto q = c * c.adjoint();
        CHECK((a - q).frobenius() >= best - 1e-12);
    }
}

TEST_CASE("real representation preserves quadratic forms", "[numerics]") {
    std::mt19937_64 rng(21);
    const auto a = random_hermitian(5, rng);
    const auto r = real_representation(a);
    for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_vector(5, rng);
        const auto z = to_real(x);
        const double zrz = dot(z, r * z);
        CHECK(zrz == Catch::Approx(quad_form(a, x, x).real()).epsilon(1e-12));
        const auto back = to_complex(z);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(back[i] == x[i]);
    }
}

TEST_CASE("vector helpers check dimensions", "[numerics]") {
    CHECK_THROWS_AS(dot(ComplexVector(2), ComplexVector(3)), ContractError);
    CHECK_THROWS_AS(ComplexVector(2) + ComplexVector(3), ContractError);
    CHECK_THROWS_AS(to_complex(RealVector(3)), ContractError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), ContractError);
}
