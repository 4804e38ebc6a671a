#include "doctest.h"

#include "stark/rpm/hankel.hpp"

using namespace stark;
using namespace stark::rpm;

namespace {

Complex cplx(double re, double im, const PrecisionContext& ctx) { return Complex(std::complex<double>(re, im), ctx); }

RiccatiSeries series_of(std::vector<Complex> f, const PrecisionContext& ctx) {
    const std::size_t n = f.size();
    return RiccatiSeries{std::move(f), std::vector<Complex>(n, Complex(ctx)), std::vector<Complex>(n, Complex(ctx)),
                         Channel::xi(0), Real(ctx)};
}

}  // namespace

TEST_CASE("two by two determinant matches its closed form") {
    const PrecisionContext ctx(40);
    std::vector<Complex> f;
    for (int j = 0; j < 6; ++j) f.push_back(cplx(0.3 * j - 0.7, 0.1 * j * j, ctx));
    const RiccatiSeries s = series_of(f, ctx);
    const Complex d0 = hankel_det(s, HankelSpec(2, 0), ctx).unscaled_value();
    const Complex d1 = hankel_det(s, HankelSpec(2, 1), ctx).unscaled_value();
    CHECK(hp::abs(d0 - (f[1] * f[3] - f[2] * f[2])) < hp::pow10(-37, ctx));
    CHECK(hp::abs(d1 - (f[2] * f[4] - f[3] * f[3])) < hp::pow10(-37, ctx));
}

TEST_CASE("geometric sequence gives a vanishing determinant") {
    const PrecisionContext ctx(40);
    std::vector<Complex> f;
    Complex r = cplx(0.5, 0.25, ctx), p = cplx(1, 0, ctx);
    for (int j = 0; j < 12; ++j) {
        f.push_back(p);
        p *= r;
    }
    for (int dim : {2, 3, 5}) {
        const HankelValue h = hankel_det(series_of(f, ctx), HankelSpec(dim, 0), ctx);
        CHECK(hp::abs(h.equilibrated_value()) < hp::pow10(-35, ctx));
    }
}

TEST_CASE("series shorter than the determinant needs is rejected") {
    const PrecisionContext ctx(30);
    const RiccatiSeries s = series_of(std::vector<Complex>(5, Complex(ctx)), ctx);
    CHECK_THROWS_AS(hankel_det(s, HankelSpec(3, 0), ctx), std::invalid_argument);
    CHECK_THROWS_AS(HankelSpec(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(HankelSpec(2, -1), std::invalid_argument);
}

TEST_CASE("analytic derivatives agree with finite differences") {
    const PrecisionContext ctx(80);
    const PrecisionContext fine(200);
    const Real field("0.01", fine);
    const Complex e = cplx(-0.51, -0.002, fine);
    const Complex a = cplx(0.49, 0.003, fine);
    const Complex h(hp::pow10(-60, fine), Real(fine));
    for (int dim : {3, 6, 10}) {
        for (const Channel& ch : {Channel::xi(0), Channel::eta(1)}) {
            const HankelSpec spec(dim, 1);
            const int len = spec.series_length();
            const HankelValue v =
                hankel_det(riccati_coefficients(e.at(ctx), a.at(ctx), field.at(ctx), ch, len, ctx), spec, ctx);
            auto at = [&](const Complex& ee, const Complex& aa) {
                return hankel_det(riccati_coefficients(ee, aa, field, ch, len, fine), spec, fine).unscaled_value();
            };
            const Complex fd_e = (at(e + h, a) - at(e - h, a)) / (h.re * 2L);
            const Complex fd_a = (at(e, a + h) - at(e, a - h)) / (h.re * 2L);
            const Real bound = hp::pow10(15 - ctx.digits(), ctx);
            CHECK(hp::abs(v.unscaled_d_energy() - fd_e.at(ctx)) <= bound * hp::abs(fd_e.at(ctx)));
            CHECK(hp::abs(v.unscaled_d_constant() - fd_a.at(ctx)) <= bound * hp::abs(fd_a.at(ctx)));
        }
    }
}

TEST_CASE("exactly singular matrix still yields derivatives") {
    const PrecisionContext ctx(40);
    const Complex e = cplx(-0.5, 0, ctx);
    const Complex a = cplx(0.5, 0, ctx);
    // unperturbed ground state: f_j = 0 for j >= 1, so every H_D^d vanishes identically
    const RiccatiSeries s = riccati_coefficients(e, a, Real(ctx), Channel::xi(0), 8, ctx);
    const HankelValue v = hankel_det(s, HankelSpec(2, 0), ctx);
    CHECK(v.unscaled_value().is_zero());
    CHECK(v.unscaled_d_energy().is_finite());
    CHECK(v.unscaled_d_constant().is_finite());
}

TEST_CASE("conjugate arguments give the conjugate determinant") {
    const PrecisionContext ctx(60);
    const Real field("0.03", ctx);
    const Complex e = cplx(-0.45, -0.01, ctx);
    const Complex a = cplx(0.52, 0.004, ctx);
    const HankelSpec spec(5, 0);
    for (const Channel& ch : {Channel::xi(0), Channel::eta(0)}) {
        const Complex h1 =
            hankel_det(riccati_coefficients(e, a, field, ch, spec.series_length(), ctx), spec, ctx).unscaled_value();
        const Complex h2 =
            hankel_det(riccati_coefficients(hp::conj(e), hp::conj(a), field, ch, spec.series_length(), ctx), spec, ctx)
                .unscaled_value();
        CHECK(hp::abs(h1 - hp::conj(h2)) <= hp::pow10(-50, ctx) * hp::abs(h1));
    }
}
