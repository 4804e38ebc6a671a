#pragma once

#include <complex>
#include <string>

#include "stark/hp/real.hpp"

namespace stark::hp {

/// Arbitrary-precision complex number (rectangular form).
struct Complex {
    Real re;
    Real im;

    explicit Complex(const PrecisionContext& ctx) : re(ctx), im(ctx) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(Real::with_bits(re.bits())) {}
    Complex(long r, long i, const PrecisionContext& ctx) : re(r, ctx), im(i, ctx) {}
    Complex(std::complex<double> z, const PrecisionContext& ctx) : re(z.real(), ctx), im(z.imag(), ctx) {}

    mpfr_prec_t bits() const { return std::max(re.bits(), im.bits()); }
    Complex at(const PrecisionContext& ctx) const { return Complex(re.at(ctx), im.at(ctx)); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real t = re * o.re;
        fma_sub(t, im, o.im);
        Real u = re * o.im;
        fma_add(u, im, o.re);
        re = std::move(t);
        im = std::move(u);
        return *this;
    }
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
    Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }
    Complex& operator*=(long o) { re *= o; im *= o; return *this; }
    Complex& operator/=(long o) { re /= o; im /= o; return *this; }

    Complex operator-() const { return Complex(-re, -im); }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& b) { return a *= b; }
    friend Complex operator*(const Real& b, Complex a) { return a *= b; }
    friend Complex operator/(Complex a, const Real& b) { return a /= b; }
    friend Complex operator*(Complex a, long b) { return a *= b; }
    friend Complex operator/(Complex a, long b) { return a /= b; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
    std::complex<long double> to_std_ld() const { return {re.to_long_double(), im.to_long_double()}; }
};

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
/// Squared modulus.
inline Real norm(const Complex& z) {
    Real r = z.re * z.re;
    fma_add(r, z.im, z.im);
    return r;
}
/// max(|re|, |im|); cheap magnitude for pivoting and scaling.
inline Real max_abs_component(const Complex& z) {
    Real a = abs(z.re);
    Real b = abs(z.im);
    return a < b ? b : a;
}

/// a += b * c
inline void fma_add(Complex& a, const Complex& b, const Complex& c) {
    fma_add(a.re, b.re, c.re);
    fma_sub(a.re, b.im, c.im);
    fma_add(a.im, b.re, c.im);
    fma_add(a.im, b.im, c.re);
}

/// a -= b * c
inline void fma_sub(Complex& a, const Complex& b, const Complex& c) {
    fma_sub(a.re, b.re, c.re);
    fma_add(a.re, b.im, c.im);
    fma_sub(a.im, b.re, c.im);
    fma_sub(a.im, b.im, c.re);
}

inline Complex& Complex::operator/=(const Complex& o) {
    Real d = norm(o);
    Real t = re * o.re;
    fma_add(t, im, o.im);
    Real u = im * o.re;
    fma_sub(u, re, o.im);
    re = t / d;
    im = u / d;
    return *this;
}

}  // namespace stark::hp
