#include "doctest.h"

#include <cmath>

#include "stark/hp/newton.hpp"

using namespace stark::hp;

namespace {

Point2 point(double a, double b, const PrecisionContext& ctx) {
    return {Complex(std::complex<double>(a, 0), ctx), Complex(std::complex<double>(b, 0), ctx)};
}

}  // namespace

TEST_CASE("affine system converges in one step") {
    const PrecisionContext ctx(40);
    auto sys = [&](const Point2& x) {
        Point2 r{x[0] - Complex(1, 0, ctx), x[1] - Complex(2, 0, ctx)};
        Jacobian2 j{Complex(1, 0, ctx), Complex(ctx), Complex(ctx), Complex(1, 0, ctx)};
        return SystemValue{r, j};
    };
    NewtonOptions opts;
    opts.residual_tol_log10 = -35;
    NewtonResult res = newton2(sys, point(0, 0, ctx), opts, ctx);
    CHECK(res.iterations == 1);
    CHECK(res.root[0].re == 1L);
    CHECK(res.root[1].re == 2L);
}

TEST_CASE("quadratic system reaches closed-form roots quadratically") {
    const PrecisionContext ctx(100);
    // r = (E^2 - 2, A^2 - E), roots E = sqrt 2, A = 2^(1/4)
    auto residual = [&](const Point2& x) {
        return Point2{x[0] * x[0] - Complex(2, 0, ctx), x[1] * x[1] - x[0]};
    };
    auto jacobian = [&](const Point2& x) {
        return Jacobian2{x[0] * 2L, Complex(ctx), Complex(-1, 0, ctx), x[1] * 2L};
    };
    NewtonOptions opts;
    opts.residual_tol_log10 = -90;
    NewtonResult res = newton2(residual, jacobian, point(1.5, 1.2, ctx), opts, ctx);
    const Real sqrt2 = sqrt(Real(2L, ctx));
    const Real root4 = sqrt(sqrt2);
    CHECK(abs(res.root[0].re - sqrt2) < pow10(-88, ctx));
    CHECK(abs(res.root[1].re - root4) < pow10(-88, ctx));
    CHECK(res.root[0].im.is_zero());
    CHECK(res.residual_norm <= pow10(-90, ctx));

    // replay the iterates to get true errors, then check e_{n+1} <= C e_n^2
    Point2 x = point(1.5, 1.2, ctx);
    std::vector<double> log_err;
    for (int it = 0; it < res.iterations; ++it) {
        Real e = abs(x[0].re - sqrt2);
        if (Real e1 = abs(x[1].re - root4); e < e1) e = e1;
        if (e.is_zero() || e < pow10(-95, ctx)) break;
        log_err.push_back(log10(e).to_double());
        Jacobian2 j = jacobian(x);
        Point2 r = residual(x);
        Complex det = j[0] * j[3] - j[1] * j[2];
        Complex d0 = (j[3] * r[0] - j[1] * r[1]) / det;
        Complex d1 = (j[0] * r[1] - j[2] * r[0]) / det;
        x[0] -= d0;
        x[1] -= d1;
    }
    REQUIRE(log_err.size() >= 4);
    for (std::size_t n = 1; n < log_err.size(); ++n) {
        // log10 C with C = 2 bounds this system's contraction constant
        CHECK(log_err[n] <= 2 * log_err[n - 1] + std::log10(2.0));
    }
}

TEST_CASE("singular Jacobian is reported with a condition estimate") {
    const PrecisionContext ctx(40);
    auto sys = [&](const Point2& x) {
        Point2 r{x[0] + x[1] - Complex(1, 0, ctx), x[0] + x[1] - Complex(2, 0, ctx)};
        Jacobian2 j{Complex(1, 0, ctx), Complex(1, 0, ctx), Complex(1, 0, ctx), Complex(1, 0, ctx)};
        return SystemValue{r, j};
    };
    NewtonOptions opts;
    opts.residual_tol_log10 = -30;
    try {
        newton2(sys, point(0, 0, ctx), opts, ctx);
        FAIL("expected NewtonError");
    } catch (const NewtonError& e) {
        CHECK(e.kind() == NewtonError::Kind::singular_jacobian);
    }
}

TEST_CASE("iteration cap reports the last iterate") {
    const PrecisionContext ctx(40);
    // r = E^2 + 1 seeded on the real axis never converges for real iterates
    auto sys = [&](const Point2& x) {
        Point2 r{x[0] * x[0] + Complex(1, 0, ctx), x[1]};
        Jacobian2 j{x[0] * 2L, Complex(ctx), Complex(ctx), Complex(1, 0, ctx)};
        return SystemValue{r, j};
    };
    NewtonOptions opts;
    opts.residual_tol_log10 = -30;
    opts.max_iter = 15;
    try {
        newton2(sys, point(0.3, 0, ctx), opts, ctx);
        FAIL("expected NewtonError");
    } catch (const NewtonError& e) {
        CHECK(e.kind() == NewtonError::Kind::max_iterations);
        CHECK(e.last_iterate()[0].im.is_zero());
    }
}

TEST_CASE("tolerance below the precision floor is rejected") {
    const PrecisionContext ctx(30);
    NewtonOptions opts;
    opts.residual_tol_log10 = -40;
    auto sys = [&](const Point2& x) { return SystemValue{x, Jacobian2{Complex(1, 0, ctx), Complex(ctx), Complex(ctx), Complex(1, 0, ctx)}}; };
    CHECK_THROWS_AS(newton2(sys, point(1, 1, ctx), opts, ctx), std::invalid_argument);
}

TEST_CASE("multiple-root acceleration restores fast convergence") {
    const PrecisionContext ctx(60);
    // triple root at (1, 2)
    auto sys = [&](const Point2& x) {
        Complex a = x[0] - Complex(1, 0, ctx), b = x[1] - Complex(2, 0, ctx);
        Point2 r{a * a * a, b * b * b};
        Jacobian2 j{a * a * 3L, Complex(ctx), Complex(ctx), b * b * 3L};
        return SystemValue{r, j};
    };
    NewtonOptions opts;
    opts.residual_tol_log10 = -50;
    opts.max_iter = 40;
    CHECK_THROWS_AS(newton2(sys, point(1.3, 2.2, ctx), opts, ctx), NewtonError);
    opts.accelerate_multiple_roots = true;
    NewtonResult res = newton2(sys, point(1.3, 2.2, ctx), opts, ctx);
    CHECK(abs(res.root[0].re - 1L) < pow10(-16, ctx));
}

TEST_CASE("stall rule returns the best iterate at a noise floor") {
    const PrecisionContext ctx(60);
    int calls = 0;
    // residual carries alternating noise of size 1e-30, so 1e-50 is unreachable
    auto sys = [&](const Point2& x) {
        Real noise = pow10(-30, ctx);
        if (calls++ % 2) noise = -noise;
        Point2 r{x[0] - Complex(1, 0, ctx) + Complex(noise), x[1] - Complex(2, 0, ctx)};
        Jacobian2 j{Complex(1, 0, ctx), Complex(ctx), Complex(ctx), Complex(1, 0, ctx)};
        return SystemValue{r, j};
    };
    NewtonOptions opts;
    opts.residual_tol_log10 = -50;
    opts.max_iter = 30;
    CHECK_THROWS_AS(newton2(sys, point(0, 0, ctx), opts, ctx), NewtonError);
    opts.stall_accept_log10 = -25;
    calls = 0;
    NewtonResult res = newton2(sys, point(0, 0, ctx), opts, ctx);
    CHECK(res.stalled);
    CHECK(abs(res.root[0].re - 1L) < pow10(-29, ctx));
    CHECK(res.iterations <= 1 + opts.stall_window + 1);
}
