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

#ifndef DFRC_NUMERICS_HPP
#define DFRC_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace dfrc {

using cplx = std::complex<double>;

// ---- error types -------------------------------------------------------

/// Precondition or argument-shape violation.
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed; `residual` carries the offending quantity.
class NumericError : public std::runtime_error {
  public:
    NumericError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

// ---- scalar helpers ----------------------------------------------------

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

template <class T>
constexpr T conj_of(const T& v) {
    if constexpr (is_complex_v<T>)
        return std::conj(v);
    else
        return v;
}

template <class T>
constexpr double real_of(const T& v) {
    if constexpr (is_complex_v<T>)
        return v.real();
    else
        return v;
}

template <class T>
bool is_finite(const T& v) {
    if constexpr (is_complex_v<T>)
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    else
        return std::isfinite(v);
}

// ---- vectors -----------------------------------------------------------

using ComplexVector = std::vector<cplx>;
using RealVector = std::vector<double>;

template <class T>
bool all_finite(std::span<const T> v) {
    return std::all_of(v.begin(), v.end(), [](const T& e) { return is_finite(e); });
}

/// x^H y
template <class T>
T dot(std::span<const T> x, std::span<const T> y) {
    if (x.size() != y.size())
        throw ContractError("dot: dimension mismatch");
    T acc{};
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += conj_of(x[i]) * y[i];
    return acc;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
    return dot<T>(std::span<const T>(x), std::span<const T>(y));
}

template <class T>
double norm_sq(std::span<const T> x) {
    double acc = 0.0;
    for (const auto& e : x)
        acc += std::norm(e);
    return acc;
}

template <class T>
double norm_sq(const std::vector<T>& x) {
    return norm_sq<T>(std::span<const T>(x));
}

template <class T>
double norm(const std::vector<T>& x) {
    return std::sqrt(norm_sq(x));
}

template <class T, class S>
std::vector<T> scaled(const std::vector<T>& x, S s) {
    std::vector<T> out(x);
    for (auto& e : out)
        e *= s;
    return out;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size())
        throw ContractError("vector add: dimension mismatch");
    std::vector<T> out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size())
        throw ContractError("vector sub: dimension mismatch");
    std::vector<T> out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

/// Stacks a complex vector as [Re; Im].
inline RealVector to_real(const ComplexVector& x) {
    const std::size_t n = x.size();
    RealVector z(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = x[i].real();
        z[n + i] = x[i].imag();
    }
    return z;
}

inline ComplexVector to_complex(const RealVector& z) {
    if (z.size() % 2 != 0)
        throw ContractError("to_complex: odd length");
    const std::size_t n = z.size() / 2;
    ComplexVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = {z[i], z[n + i]};
    return x;
}

// ---- dense matrix ------------------------------------------------------

/// Dense row-major matrix over double or std::complex<double>.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T{1};
        return m;
    }

    static Matrix diagonal(std::span<const double> d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = T{d[i]};
        return m;
    }

    /// a b^H
    static Matrix outer(const std::vector<T>& a, const std::vector<T>& b) {
        Matrix m(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                m(i, j) = a[i] * conj_of(b[j]);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    std::span<const T> data() const noexcept { return data_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> col(std::size_t c) const {
        std::vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                m(c, r) = conj_of((*this)(r, c));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(T s) {
        for (auto& e : data_)
            e *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, T s) { return a *= s; }
    friend Matrix operator*(T s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw ContractError("matmul: dimension mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{})
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
        if (a.cols_ != x.size())
            throw ContractError("matvec: dimension mismatch");
        std::vector<T> y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T acc{};
            for (std::size_t j = 0; j < a.cols_; ++j)
                acc += a(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    double frobenius() const {
        double acc = 0.0;
        for (const auto& e : data_)
            acc += std::norm(e);
        return std::sqrt(acc);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& e : data_)
            m = std::max(m, std::abs(e));
        return m;
    }

    T trace() const {
        T acc{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            acc += (*this)(i, i);
        return acc;
    }

    bool all_finite() const { return dfrc::all_finite<T>(data_); }

  private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ContractError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

/// x^H A y
template <class T>
T quad_form(const Matrix<T>& a, const std::vector<T>& x, const std::vector<T>& y) {
    return dot(x, a * y);
}

template <class T>
double hermitian_defect(const Matrix<T>& a) {
    if (!a.square())
        return INFINITY;
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            d = std::max(d, std::abs(a(i, j) - conj_of(a(j, i))));
    return d;
}

/// A = A^H within 1e-12 relative to the largest entry.
template <class T>
bool is_hermitian(const Matrix<T>& a, double rel_tol = 1e-12) {
    return hermitian_defect(a) <= rel_tol * std::max(a.max_abs(), 1e-14);
}

/// Real 2n x 2n representation R of a Hermitian A, with x^H A x = z^T R z
/// for z = [Re x; Im x].
inline RealMatrix real_representation(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    RealMatrix r(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = a(i, j).real();
            const double im = a(i, j).imag();
            r(i, j) = re;
            r(n + i, n + j) = re;
            r(i, n + j) = -im;
            r(n + i, j) = im;
        }
    return r;
}

// ---- Hermitian eigendecomposition --------------------------------------

template <class T>
struct EigDecomposition {
    RealVector values;  // descending
    Matrix<T> vectors;  // column i pairs with values[i]

    Matrix<T> reconstruct() const {
        const std::size_t n = values.size();
        Matrix<T> out(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const T vik = vectors(i, k) * values[k];
                for (std::size_t j = 0; j < n; ++j)
                    out(i, j) += vik * conj_of(vectors(j, k));
            }
        return out;
    }
};

/// Cyclic Jacobi eigensolver for Hermitian (or real symmetric) matrices.
template <class T>
EigDecomposition<T> herm_eig(const Matrix<T>& input) {
    if (!input.square())
        throw ContractError("herm_eig: matrix is not square");
    if (!is_hermitian(input))
        throw ContractError("herm_eig: matrix is not Hermitian (defect " +
                            std::to_string(hermitian_defect(input)) + ")");
    if (!input.all_finite())
        throw ContractError("herm_eig: non-finite entries");

    const std::size_t n = input.rows();
    Matrix<T> a = input;
    Matrix<T> v = Matrix<T>::identity(n);

    // Symmetrise so round-off in the input does not leak into the diagonal.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = T{real_of(a(i, i))};
        for (std::size_t j = i + 1; j < n; ++j) {
            const T avg = (a(i, j) + conj_of(a(j, i))) * 0.5;
            a(i, j) = avg;
            a(j, i) = conj_of(avg);
        }
    }

    const double scale = std::max(a.frobenius(), 1e-300);
    auto off_norm = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                acc += 2.0 * std::norm(a(i, j));
        return std::sqrt(acc);
    };

    constexpr int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= 1e-15 * scale)
            break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= 1e-300)
                    continue;
                const T phase = a(p, q) / mag;  // e^{i theta}
                const double app = real_of(a(p, p));
                const double aqq = real_of(a(q, q));
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J = [[c, s], [-s e^{-i theta}, c e^{-i theta}]] on (p, q).
                const T jpp = T{c};
                const T jpq = T{s};
                const T jqp = -s * conj_of(phase);
                const T jqq = c * conj_of(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const T akp = a(k, p);
                    const T akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T apk = a(p, k);
                    const T aqk = a(q, k);
                    a(p, k) = conj_of(jpp) * apk + conj_of(jqp) * aqk;
                    a(q, k) = conj_of(jpq) * apk + conj_of(jqq) * aqk;
                }
                a(p, q) = T{};
                a(q, p) = T{};
                a(p, p) = T{real_of(a(p, p))};
                a(q, q) = T{real_of(a(q, q))};

                for (std::size_t k = 0; k < n; ++k) {
                    const T vkp = v(k, p);
                    const T vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if (sweep == max_sweeps && off_norm() > 1e-12 * scale)
        throw NumericError("herm_eig: Jacobi sweeps did not converge", off_norm() / scale);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return real_of(a(i, i)) > real_of(a(j, j));
    });

    EigDecomposition<T> out{RealVector(n), Matrix<T>(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = real_of(a(order[k], order[k]));
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

template <class T>
double lambda_max(const Matrix<T>& a) {
    return herm_eig(a).values.front();
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
template <class T>
Matrix<T> psd_project(const Matrix<T>& a) {
    auto eig = herm_eig(a);
    for (auto& l : eig.values)
        l = std::max(l, 0.0);
    return eig.reconstruct();
}

// ---- Cholesky and Hermitian solves -------------------------------------

/// Lower-triangular L with A = L L^H. Throws NumericError (carrying the
/// failing pivot) when A is not numerically positive definite.
template <class T>
Matrix<T> cholesky(const Matrix<T>& a) {
    if (!a.square())
        throw ContractError("cholesky: matrix is not square");
    const std::size_t n = a.rows();
    Matrix<T> l(n, n);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_diag = std::max(max_diag, std::abs(real_of(a(i, i))));
    const double floor = 1e-12 * std::max(max_diag, 1e-14);
    for (std::size_t j = 0; j < n; ++j) {
        double d = real_of(a(j, j));
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (!(d > floor))
            throw NumericError("cholesky: matrix not positive definite", d);
        const double ljj = std::sqrt(d);
        l(j, j) = T{ljj};
        for (std::size_t i = j + 1; i < n; ++i) {
            T s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * conj_of(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

/// Solves L L^H x = b given the Cholesky factor.
template <class T>
std::vector<T> cholesky_solve(const Matrix<T>& l, const std::vector<T>& b) {
    const std::size_t n = l.rows();
    if (b.size() != n)
        throw ContractError("cholesky_solve: dimension mismatch");
    std::vector<T> y(b);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k)
            y[i] -= l(i, k) * y[k];
        y[i] /= l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k)
            y[ii] -= conj_of(l(k, ii)) * y[k];
        y[ii] /= l(ii, ii);
    }
    return y;
}

/// Solves A x = b for Hermitian positive-definite A, with one step of
/// iterative refinement.
template <class T>
std::vector<T> herm_solve(const Matrix<T>& a, const std::vector<T>& b) {
    if (!a.square() || a.rows() != b.size())
        throw ContractError("herm_solve: dimension mismatch");
    Matrix<T> l;
    try {
        l = cholesky(a);
    } catch (const NumericError&) {
        const auto eig = herm_eig(a);
        const double smallest = eig.values.back();
        throw NumericError("herm_solve: matrix is singular or indefinite, smallest eigenvalue " +
                               std::to_string(smallest),
                           smallest);
    }
    auto x = cholesky_solve(l, b);
    const auto r = b - a * x;
    const auto dx = cholesky_solve(l, r);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += dx[i];
    return x;
}

/// A^{-1} B column by column, reusing one factorisation.
template <class T>
Matrix<T> herm_solve(const Matrix<T>& a, const Matrix<T>& b) {
    if (!a.square() || a.rows() != b.rows())
        throw ContractError("herm_solve: dimension mismatch");
    const auto l = cholesky(a);
    Matrix<T> out(b.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        const auto x = cholesky_solve(l, b.col(c));
        for (std::size_t r = 0; r < b.rows(); ++r)
            out(r, c) = x[r];
    }
    return out;
}

}  // namespace dfrc

#endif  // DFRC_NUMERICS_HPP
