#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qfma/linalg.hpp"

using namespace qfma;

namespace {

Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    // Product of Givens-style 2-level rotations with random phases.
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Matrix u = Matrix::identity(n);
    for (int pass = 0; pass < 3; ++pass)
        for (std::size_t a = 0; a + 1 < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                Matrix g = Matrix::identity(n);
                Matrix r = rot2(angle(rng), angle(rng), angle(rng));
                g(a, a) = r(0, 0);
                g(a, b) = r(0, 1);
                g(b, a) = r(1, 0);
                g(b, b) = r(1, 1);
                u = g * u;
            }
    return u;
}

} // namespace

TEST_CASE("is_unitary basic cases") {
    CHECK(is_unitary(Matrix::identity(3), 1e-12));

    const double s = 1.0 / std::sqrt(2.0);
    Matrix h(2, 2);
    h(0, 0) = s; h(0, 1) = s;
    h(1, 0) = s; h(1, 1) = -s;
    CHECK(is_unitary(h, 1e-12));

    Matrix bad(2, 2);
    bad(0, 0) = 1.0; bad(1, 1) = 2.0;
    CHECK_FALSE(is_unitary(bad, 1e-9));

    Matrix rect(2, 3);
    CHECK_THROWS_AS(is_unitary(rect, 1e-9), std::invalid_argument);
}

TEST_CASE("rot2 matches the printed 2x2 family") {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix q6 = rot2(std::numbers::pi / 4.0, 0.0, 0.0);
    CHECK(std::abs(q6(0, 0) - Complex{s, 0}) < 1e-14);
    CHECK(std::abs(q6(0, 1) - Complex{s, 0}) < 1e-14);
    CHECK(std::abs(q6(1, 0) - Complex{s, 0}) < 1e-14);
    CHECK(std::abs(q6(1, 1) - Complex{-s, 0}) < 1e-14);

    Matrix signed_id = rot2(0.0, 0.0, 0.0);
    CHECK(std::abs(signed_id(0, 0) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(signed_id(1, 1) - Complex{-1, 0}) < 1e-14);
    CHECK(std::abs(signed_id(0, 1)) < 1e-14);

    const double phi = 0.3;
    Matrix real = rot2(phi, 0.0, 0.0);
    CHECK(std::abs(real(0, 0).real() - std::cos(phi)) < 1e-14);
    CHECK(std::abs(real(0, 1).real() - std::sin(phi)) < 1e-14);
    CHECK(std::abs(real(1, 0).real() - std::sin(phi)) < 1e-14);
    CHECK(std::abs(real(1, 1).real() + std::cos(phi)) < 1e-14);
    CHECK(std::abs(real(0, 0).imag()) < 1e-14);
}

TEST_CASE("rot2 is unitary for random parameters") {
    std::mt19937_64 rng(2025);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int i = 0; i < 100; ++i)
        CHECK(is_unitary(rot2(angle(rng), angle(rng), angle(rng)), 1e-10));
}

TEST_CASE("rot4 reproduces the printed entries and stays unitary") {
    Matrix id4 = rot4(0.0, 0.0);
    CHECK(unitarity_residual(id4) < 1e-14);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(id4(i, i) - Complex{1, 0}) < 1e-14);

    // phi = psi = pi/4 gives entries +-1/2 and +-i/2 in the printed pattern.
    Matrix q8 = rot4(std::numbers::pi / 4.0, std::numbers::pi / 4.0);
    const Complex half{0.5, 0.0};
    const Complex ihalf{0.0, 0.5};
    const Complex expect[4][4] = {
        {half, ihalf, ihalf, -half},
        {ihalf, half, -half, ihalf},
        {ihalf, -half, half, ihalf},
        {-half, ihalf, ihalf, half},
    };
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(std::abs(q8(r, c) - expect[r][c]) < 1e-14);

    CHECK(is_unitary(rot4(0.2, 0.7), 1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int i = 0; i < 100; ++i)
        CHECK(is_unitary(rot4(angle(rng), angle(rng)), 1e-10));
}

TEST_CASE("block_product follows the index formula") {
    std::mt19937_64 rng(11);
    Matrix a = random_unitary(3, rng);

    Matrix one(1, 1);
    one(0, 0) = 1.0;
    Matrix same = block_product(a, one);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(std::abs(same(r, c) - a(r, c)) < 1e-14);

    Matrix i6 = block_product(Matrix::identity(2), Matrix::identity(3));
    CHECK(unitarity_residual(i6) < 1e-14);
    for (std::size_t r = 0; r < 6; ++r) CHECK(std::abs(i6(r, r) - Complex{1, 0}) < 1e-14);

    // Hand-evaluated: Q6 (x) Q6 has all first-row entries of magnitude 1/2.
    Matrix q6 = rot2(std::numbers::pi / 4.0, 0.0, 0.0);
    Matrix p = block_product(q6, q6);
    REQUIRE(p.rows() == 4);
    for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(std::abs(p(0, c)) - 0.5) < 1e-14);
    // C[(m-1)k+i,(l-1)k+j] = A[i,j] B[m,l]: entry (2,1) is A[0,1]*B[1,0] = 1/2.
    CHECK(std::abs(p(2, 1) - Complex{0.5, 0.0}) < 1e-14);
    // Entry (3,3) = A[1,1]*B[1,1] = 1/2.
    CHECK(std::abs(p(3, 3) - Complex{0.5, 0.0}) < 1e-14);
    CHECK(is_unitary(p, 1e-12));
}

TEST_CASE("block_product of random unitaries is unitary and associative") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int i = 0; i < 50; ++i) {
        Matrix a = random_unitary(dim(rng), rng);
        Matrix b = random_unitary(dim(rng), rng);
        CHECK(is_unitary(block_product(a, b), 1e-10));
    }
    for (int i = 0; i < 10; ++i) {
        Matrix a = random_unitary(2, rng);
        Matrix b = random_unitary(dim(rng), rng);
        Matrix c = random_unitary(2, rng);
        Matrix lhs = block_product(block_product(a, b), c);
        Matrix rhs = block_product(a, block_product(b, c));
        REQUIRE(lhs.rows() == rhs.rows());
        for (std::size_t r = 0; r < lhs.rows(); ++r)
            for (std::size_t col = 0; col < lhs.cols(); ++col)
                CHECK(std::abs(lhs(r, col) - rhs(r, col)) < 1e-12);
    }
}

TEST_CASE("fourier matrix") {
    Matrix f1 = fourier(1);
    CHECK(std::abs(f1(0, 0) - Complex{1, 0}) < 1e-14);

    const double s = 1.0 / std::sqrt(2.0);
    Matrix f2 = fourier(2);
    CHECK(std::abs(f2(0, 0) - Complex{s, 0}) < 1e-14);
    CHECK(std::abs(f2(0, 1) - Complex{s, 0}) < 1e-14);
    CHECK(std::abs(f2(1, 0) - Complex{s, 0}) < 1e-14);
    CHECK(std::abs(f2(1, 1) - Complex{-s, 0}) < 1e-14);

    Matrix f3 = fourier(3);
    const double t = 1.0 / std::sqrt(3.0);
    for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(f3(0, c) - Complex{t, 0}) < 1e-14);
    CHECK(is_unitary(f3, 1e-12));

    for (std::size_t n = 1; n <= 32; ++n) CHECK(is_unitary(fourier(n), 1e-10));
}

TEST_CASE("unitary_with_first_column embeds a given unit column") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 5;
        std::vector<Complex> v(n);
        double norm2 = 0.0;
        for (auto& z : v) {
            z = Complex{coef(rng), coef(rng)};
            norm2 += std::norm(z);
        }
        for (auto& z : v) z /= std::sqrt(norm2);
        Matrix u = unitary_with_first_column(v);
        CHECK(is_unitary(u, 1e-10));
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(u(i, 0) - v[i]) < 1e-10);
    }
}
