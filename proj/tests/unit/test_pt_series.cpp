#include "doctest.h"

#include <cmath>

#include "stark/pt/series.hpp"
#include "stark/rpm/solver.hpp"

using namespace stark;
using namespace stark::pt;

namespace {

// Low-order Rayleigh-Schroedinger energies in parabolic quantum numbers.
Real e1_closed(const StateLabel& s, const PrecisionContext& ctx) {
    return Real(3L * s.n() * s.q(), ctx) / 2L;
}

Real e2_closed(const StateLabel& s, const PrecisionContext& ctx) {
    const long n = s.n(), q = s.q(), m = s.m;
    return Real(-n * n * n * n * (17 * n * n - 3 * q * q - 9 * m * m + 19), ctx) / 16L;
}

Real e3_closed(const StateLabel& s, const PrecisionContext& ctx) {
    const long n = s.n(), q = s.q(), m = s.m;
    Real n7 = pow(Real(n, ctx), 7L);
    return n7 * (3L * q * (23 * n * n - q * q + 11 * m * m + 39)) / 32L;
}

Real e4_closed(const StateLabel& s, const PrecisionContext& ctx) {
    const long n = s.n(), q = s.q(), m = s.m;
    const long poly = 5487 * n * n * n * n + 35182 * n * n - 1134 * m * m * q * q + 1806 * n * n * q * q -
                      3402 * n * n * m * m + 147 * q * q * q * q - 549 * m * m * m * m + 5754 * q * q -
                      8622 * m * m + 16211;
    return -pow(Real(n, ctx), 10L) * poly / 1024L;
}

const StateLabel kStates[] = {StateLabel(0, 0, 0), StateLabel(0, 1, 0), StateLabel(1, 0, 0), StateLabel(0, 0, 1),
                              StateLabel(2, 1, 0), StateLabel(1, 1, 2), StateLabel(0, 3, -1)};

}  // namespace

TEST_CASE("low orders match the closed-form energies") {
    const PrecisionContext ctx(60);
    const Real tol = hp::pow10(-40, ctx);
    for (const StateLabel& s : kStates) {
        const PTSeries p = pt_series(s, 8, ctx);
        CAPTURE(s.ket());
        const long n = s.n();
        CHECK(abs(p.energy[0] + Real(1L, ctx) / (2 * n * n)) < tol);
        CHECK(abs(p.energy[1] - e1_closed(s, ctx)) < tol);
        CHECK(abs(p.energy[2] - e2_closed(s, ctx)) <= tol * abs(e2_closed(s, ctx)));
        CHECK(abs(p.energy[3] - e3_closed(s, ctx)) <= tol * (abs(e3_closed(s, ctx)) + 1L));
        CHECK(abs(p.energy[4] - e4_closed(s, ctx)) <= tol * abs(e4_closed(s, ctx)));
    }
}

TEST_CASE("first-order shift of |2 1 0> is 3") {
    const PrecisionContext ctx(40);
    const PTSeries p = pt_series(StateLabel(1, 0, 0), 4, ctx);
    CHECK(p.energy[1] == 3L);
}

TEST_CASE("separation constants close to one at every order") {
    const PrecisionContext ctx(80);
    for (const StateLabel& s : kStates) {
        const PTSeries p = pt_series(s, 40, ctx);
        CHECK(abs(p.a_plus[0] + p.a_minus[0] - 1L) < hp::pow10(-70, ctx));
        const long n = s.n();
        CHECK(abs(p.a_plus[0] - Real(2L * s.n1 + s.abs_m() + 1, ctx) / (2 * n)) < hp::pow10(-70, ctx));
        CAPTURE(s.ket());
        Real scale(1L, ctx);
        for (int k = 1; k <= 40; ++k) {
            CAPTURE(k);
            scale = std::max(scale, abs(p.a_plus[k]));
            CHECK(abs(p.a_plus[k] + p.a_minus[k]) <= hp::pow10(-60, ctx) * scale);
        }
    }
}

TEST_CASE("swapping n1 and n2 flips the sign of odd orders") {
    const PrecisionContext ctx(80);
    const PTSeries a = pt_series(StateLabel(2, 0, 1), 30, ctx);
    const PTSeries b = pt_series(StateLabel(0, 2, 1), 30, ctx);
    for (int k = 0; k <= 30; ++k) {
        const Real sign(k % 2 ? -1L : 1L, ctx);
        const Real scale = abs(a.energy[k]) + 1L;
        CHECK(abs(a.energy[k] - sign * b.energy[k]) <= hp::pow10(-60, ctx) * scale);
        CHECK(abs(a.a_plus[k] - sign * b.a_minus[k]) <= hp::pow10(-60, ctx) * (abs(a.a_plus[k]) + 1L));
    }
}

TEST_CASE("odd orders vanish when n1 = n2") {
    const PrecisionContext ctx(80);
    for (const StateLabel& s : {StateLabel(0, 0, 0), StateLabel(1, 1, 0), StateLabel(0, 0, 3)}) {
        const PTSeries p = pt_series(s, 40, ctx);
        for (int k = 1; k <= 40; k += 2) {
            const Real scale = abs(p.energy[k - 1]) + 1L;
            CHECK(abs(p.energy[k]) <= hp::pow10(-60, ctx) * scale);
        }
    }
}

TEST_CASE("ground-state series grows factorially") {
    const PrecisionContext ctx(80);
    const PTSeries p = pt_series(StateLabel(0, 0, 0), 100, ctx);
    double prev = 0;
    for (int k = 10; k <= 48; ++k) {
        const double ratio = (p.energy[2 * k + 2] / p.energy[2 * k]).to_double();
        CHECK(ratio > prev);
        prev = ratio;
    }
    CHECK(prev > 1000.0);
}

TEST_CASE("precision requirement") {
    const PrecisionContext ctx(50);
    CHECK_THROWS_AS(pt_series(StateLabel(0, 0, 0), 60, ctx), std::invalid_argument);
    CHECK_THROWS_AS(pt_series(StateLabel(0, 0, 0), 201, PrecisionContext(200)), std::invalid_argument);
}

TEST_CASE("low orders agree with a polynomial fit of RPM energies at tiny fields") {
    const PrecisionContext ctx(60);
    const StateLabel s(1, 0, 0);
    const PTSeries p = pt_series(s, 8, ctx);
    rpm::SolveOptions opts;
    opts.enforce_precision_rule = false;
    // (E(F) - E0 - E1 F) / F^2 sampled at F = 1e-6 .. 6e-6 and fitted by c2 + c3 F + c4 F^2 + c5 F^3
    constexpr int points = 6, unknowns = 4;
    std::vector<std::vector<Real>> normal(unknowns, std::vector<Real>(unknowns + 1, Real(ctx)));
    for (int i = 1; i <= points; ++i) {
        const Real f = Real(static_cast<long>(i), ctx) / 1000000L;
        rpm::Seed seed = rpm::seed_from_perturbation(s, f, ctx);
        seed.energy.im = Real(ctx);
        const rpm::ResonanceEstimate r = rpm::solve_resonance(f, s.m, seed, rpm::HankelSpec(12, 0), ctx, opts);
        const Real y = (r.energy.re - p.energy[0] - p.energy[1] * f) / (f * f);
        std::vector<Real> basis{Real(1L, ctx)};
        for (int k = 1; k < unknowns; ++k) basis.push_back(basis.back() * f);
        for (int a = 0; a < unknowns; ++a) {
            for (int b = 0; b < unknowns; ++b) normal[a][b] += basis[a] * basis[b];
            normal[a][unknowns] += basis[a] * y;
        }
    }
    for (int c = 0; c < unknowns; ++c)
        for (int r = c + 1; r < unknowns; ++r) {
            const Real factor = normal[r][c] / normal[c][c];
            for (int k = c; k <= unknowns; ++k) normal[r][k] -= factor * normal[c][k];
        }
    std::vector<Real> coef(unknowns, Real(ctx));
    for (int r = unknowns - 1; r >= 0; --r) {
        Real acc = normal[r][unknowns];
        for (int k = r + 1; k < unknowns; ++k) acc -= normal[r][k] * coef[k];
        coef[r] = acc / normal[r][r];
    }
    CHECK(coef[0].to_double() == doctest::Approx(p.energy[2].to_double()).epsilon(1e-8));
    CHECK(coef[1].to_double() == doctest::Approx(p.energy[3].to_double()).epsilon(1e-5));
    CHECK(coef[2].to_double() == doctest::Approx(p.energy[4].to_double()).epsilon(1e-2));
}

TEST_CASE("optimal truncation of the ground state") {
    const PrecisionContext ctx(110);
    const PTSeries p = pt_series(StateLabel(0, 0, 0), 140, ctx);
    const TruncationReport r = optimal_truncation(p, Real("0.005", ctx));
    CHECK(r.k_opt >= 120);
    CHECK(r.k_opt <= 140);
    CHECK(r.divergent_regime);
    CHECK(r.error_estimate < hp::pow10(-54, ctx));
}

TEST_CASE("optimal truncation of a factorial model") {
    const PrecisionContext ctx(40);
    std::vector<Real> c;
    Real fact(1L, ctx);
    for (int k = 0; k <= 30; ++k) {
        if (k > 0) fact *= static_cast<long>(k);
        c.push_back(fact);
    }
    const TruncationReport r = optimal_truncation(c, Real("0.1", ctx));
    CHECK(r.k_opt >= 9);
    CHECK(r.k_opt <= 10);
    CHECK(r.divergent_regime);
    // smallest term 10! 0.1^10
    CHECK(r.error_estimate.to_double() == doctest::Approx(3.6288e-4).epsilon(1e-3));
}

TEST_CASE("a series still converging at its last order is not divergent") {
    const PrecisionContext ctx(60);
    const PTSeries p = pt_series(StateLabel(0, 0, 0), 10, ctx);
    const TruncationReport r = optimal_truncation(p, Real("1e-6", ctx));
    CHECK_FALSE(r.divergent_regime);
    CHECK(r.k_opt == 10);
}

TEST_CASE("zero coefficients are not terms") {
    const PrecisionContext ctx(40);
    const std::vector<Real> c = {Real(1L, ctx), Real(ctx), Real(2L, ctx), Real(ctx), Real(1000L, ctx)};
    const TruncationReport r = optimal_truncation(c, Real("0.1", ctx));
    CHECK(r.k_opt == 2);
    CHECK(r.error_estimate.to_double() == doctest::Approx(0.1));
}

TEST_CASE("asymptotic width formula") {
    const PrecisionContext ctx(40);
    const Real w = asymptotic_width(Real("0.005", ctx), ctx);
    CHECK(w.to_double() == doctest::Approx(9.4983e-56).epsilon(5e-5));
    double prev = 0;
    for (int i = 1; i <= 50; ++i) {
        const double now = asymptotic_width(Real(static_cast<long>(i), ctx) / 1000L, ctx).to_double();
        CHECK(now > prev);
        prev = now;
    }
    CHECK_THROWS_AS(asymptotic_width(Real(ctx), ctx), FormulaDomainError);
    CHECK_THROWS_AS(asymptotic_width(Real("-0.01", ctx), ctx), FormulaDomainError);
    CHECK_THROWS_AS(asymptotic_width(Real("0.051", ctx), ctx), FormulaDomainError);
}
