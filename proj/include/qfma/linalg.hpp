#pragma once

// Complex matrix kernel: the parametric unitary families used by the
// automata constructions, plus numerical unitarity verification.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qfma {

using Complex = std::complex<double>;

constexpr double kUnitaryTol = 1e-10;
constexpr double kProbTol = 1e-9;

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<Complex>& entries() const { return entries_; }

    Matrix adjoint() const {
        Matrix a(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                a(c, r) = std::conj((*this)(r, c));
        return a;
    }

    Matrix operator*(const Matrix& other) const {
        if (cols_ != other.rows_)
            throw std::invalid_argument("matrix product: inner dimensions disagree");
        Matrix p(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex a = (*this)(r, k);
                if (a == Complex{}) continue;
                for (std::size_t c = 0; c < other.cols_; ++c)
                    p(r, c) += a * other(k, c);
            }
        return p;
    }

    bool finite() const {
        for (const Complex& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Complex> entries_;
};

// Max-norm of M†M − I.
inline double unitarity_residual(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("is_unitary: matrix is not square");
    const std::size_t n = m.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                dot += std::conj(m(k, i)) * m(k, j);
            if (i == j) dot -= 1.0;
            worst = std::max(worst, std::abs(dot));
        }
    return worst;
}

inline bool is_unitary(const Matrix& m, double tol = kUnitaryTol) {
    return unitarity_residual(m) <= tol;
}

// 2x2 family: row 1 = (cos phi e^{i eta}, sin phi e^{i eta}),
//             row 2 = (sin phi e^{i psi}, -cos phi e^{i psi}).
inline Matrix rot2(double phi, double eta, double psi) {
    Matrix m(2, 2);
    const Complex ee{std::cos(eta), std::sin(eta)};
    const Complex ep{std::cos(psi), std::sin(psi)};
    m(0, 0) = std::cos(phi) * ee;
    m(0, 1) = std::sin(phi) * ee;
    m(1, 0) = std::sin(phi) * ep;
    m(1, 1) = -std::cos(phi) * ep;
    return m;
}

// 4x4 family with entries built from cos/sin products and imaginary factors.
inline Matrix rot4(double phi, double psi) {
    const double cc = std::cos(phi) * std::cos(psi);
    const double sc = std::sin(phi) * std::cos(psi);
    const double cs = std::cos(phi) * std::sin(psi);
    const double ss = std::sin(phi) * std::sin(psi);
    const Complex i{0.0, 1.0};
    Matrix m(4, 4);
    const Complex row0[4] = {cc, i * sc, i * cs, -ss};
    const Complex row1[4] = {i * sc, cc, -ss, i * cs};
    const Complex row2[4] = {i * cs, -ss, cc, i * sc};
    const Complex row3[4] = {-ss, i * cs, i * sc, cc};
    for (std::size_t c = 0; c < 4; ++c) {
        m(0, c) = row0[c];
        m(1, c) = row1[c];
        m(2, c) = row2[c];
        m(3, c) = row3[c];
    }
    return m;
}

// Block product: C[(m-1)k+i, (l-1)k+j] = A[i,j] * B[m,l] (1-based in the
// definition; translated to 0-based here once).
inline Matrix block_product(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw std::invalid_argument("block_product: inputs must be square");
    const std::size_t k = a.rows(), n = b.rows();
    Matrix c(k * n, k * n);
    for (std::size_t mb = 0; mb < n; ++mb)
        for (std::size_t lb = 0; lb < n; ++lb)
            for (std::size_t ia = 0; ia < k; ++ia)
                for (std::size_t ja = 0; ja < k; ++ja)
                    c(mb * k + ia, lb * k + ja) = a(ia, ja) * b(mb, lb);
    return c;
}

// Discrete Fourier matrix F[j,k] = (1/sqrt(n)) e^{2 pi i j k / n}.
// Row 0 and (transposed) column 0 are all 1/sqrt(n), which is what the
// equiprobable-branching constructions rely on.
inline Matrix fourier(std::size_t n) {
    if (n < 1) throw std::invalid_argument("fourier: n must be >= 1");
    Matrix m(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>((j * k) % n) / static_cast<double>(n);
            m(j, k) = norm * Complex{std::cos(angle), std::sin(angle)};
        }
    return m;
}

// Extends a unit column vector to a full unitary whose column 0 is that
// vector (Householder reflection mapping e0 onto v).
inline Matrix unitary_with_first_column(const std::vector<Complex>& v) {
    const std::size_t n = v.size();
    double norm2 = 0.0;
    for (const Complex& z : v) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("unitary_with_first_column: column is not unit norm");
    // u = v - e0 (phase-adjusted); H = phase * (I - 2 u u^dag / |u|^2).
    Complex phase{1.0, 0.0};
    if (std::abs(v[0]) > 1e-12) phase = v[0] / std::abs(v[0]);
    std::vector<Complex> u(n);
    double unorm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = v[i] / phase;
        if (i == 0) u[i] -= 1.0;
        unorm2 += std::norm(u[i]);
    }
    Matrix h = Matrix::identity(n);
    if (unorm2 > 1e-24) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                h(r, c) -= 2.0 * u[r] * std::conj(u[c]) / unorm2;
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            h(r, c) *= phase;
    return h;
}

} // namespace qfma
