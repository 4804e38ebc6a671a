#include "doctest.h"

#include <random>

#include "stark/hp/linalg.hpp"

using namespace stark::hp;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng, const PrecisionContext& ctx) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n, Complex(ctx));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(std::complex<double>(u(rng), u(rng)), ctx);
    return m;
}

// Laplace expansion along the first row; independent of any elimination.
Complex cofactor_det(const ComplexMatrix& m, const PrecisionContext& ctx) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Complex sum(ctx);
    for (std::size_t c = 0; c < n; ++c) {
        ComplexMatrix minor(n - 1, n - 1, Complex(ctx));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        Complex term = m(0, c) * cofactor_det(minor, ctx);
        if (c % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("determinant of simple matrices") {
    const PrecisionContext ctx(40);
    ComplexMatrix id(5, 5, Complex(ctx));
    for (std::size_t i = 0; i < 5; ++i) id(i, i).re = 1;
    Complex d = det_lu(id, ctx);
    CHECK(d.re == 1L);
    CHECK(d.im.is_zero());

    ComplexMatrix diag(2, 2, Complex(ctx));
    diag(0, 0) = Complex(2, 0, ctx);
    diag(1, 1) = Complex(0, 3, ctx);
    Complex d2 = det_lu(diag, ctx);
    CHECK(d2.re.is_zero());
    CHECK(d2.im == 6L);
}

TEST_CASE("structurally zero pivot column gives exact zero") {
    const PrecisionContext ctx(40);
    ComplexMatrix m(3, 3, Complex(1, 1, ctx));
    for (std::size_t i = 0; i < 3; ++i) m(i, 1) = Complex(ctx);
    ComplexLu lu(m);
    CHECK(lu.singular());
    CHECK(det_lu(m, ctx).is_zero());
}

TEST_CASE("random 8x8 determinant agrees with cofactor expansion") {
    const PrecisionContext ctx(50);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        ComplexMatrix m = random_matrix(8, rng, ctx);
        Complex lu = det_lu(m, ctx);
        Complex brute = cofactor_det(m, ctx);
        CHECK(abs(lu - brute) <= pow10(-45, ctx) * abs(brute));
    }
}

TEST_CASE("determinant is linear in each row") {
    const PrecisionContext ctx(50);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix m = random_matrix(6, rng, ctx);
        const Complex before = det_lu(m, ctx);
        const Complex c(std::complex<double>(1e7 * (trial + 1), -3.5), ctx);
        const std::size_t row = pick(rng);
        for (std::size_t j = 0; j < 6; ++j) m(row, j) *= c;
        const Complex after = det_lu(m, ctx);
        CHECK(abs(after - before * c) <= pow10(-44, ctx) * abs(after));
    }
}

TEST_CASE("inverse and solve undo the matrix") {
    const PrecisionContext ctx(40);
    std::mt19937_64 rng(3);
    ComplexMatrix m = random_matrix(5, rng, ctx);
    // badly scaled rows exercise the equilibration
    for (std::size_t j = 0; j < 5; ++j) m(2, j) *= Real("1e-300", ctx);
    ComplexLu lu(m);
    ComplexMatrix inv = lu.inverse();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            Complex s(ctx);
            Real scale(1L, ctx);
            for (std::size_t k = 0; k < 5; ++k) {
                fma_add(s, m(i, k), inv(k, j));
                scale += abs(m(i, k)) * abs(inv(k, j));
            }
            if (i == j) s.re -= 1L;
            CHECK(abs(s) < pow10(-35, ctx) * scale);
        }
}

TEST_CASE("determinant is deterministic") {
    const PrecisionContext ctx(60);
    std::mt19937_64 rng(5);
    ComplexMatrix m = random_matrix(7, rng, ctx);
    const Complex a = det_lu(m, ctx), b = det_lu(m, ctx);
    CHECK(a.re.to_sci(60) == b.re.to_sci(60));
    CHECK(a.im.to_sci(60) == b.im.to_sci(60));
}
