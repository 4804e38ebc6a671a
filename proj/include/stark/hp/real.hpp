#pragma once

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "stark/hp/precision.hpp"

namespace stark::hp {

/// Owning RAII handle for an MPFR floating-point number.
///
/// Precision travels with the value. Binary operators produce a result at the
/// larger of the two operand precisions; compound assignment keeps the
/// precision of the left-hand side. All rounding is to nearest.
class Real {
public:
    explicit Real(const PrecisionContext& ctx) : Real(ctx.bits()) {}
    Real(long value, const PrecisionContext& ctx) : Real(ctx.bits()) { mpfr_set_si(v_, value, MPFR_RNDN); }
    Real(int value, const PrecisionContext& ctx) : Real(static_cast<long>(value), ctx) {}
    Real(double value, const PrecisionContext& ctx) : Real(ctx.bits()) { mpfr_set_d(v_, value, MPFR_RNDN); }
    /// Parses a decimal string such as "-0.5000562847" or "9.498e-56".
    Real(std::string_view text, const PrecisionContext& ctx);

    static Real with_bits(mpfr_prec_t bits) { return Real(bits); }

    Real(const Real& other) : Real(mpfr_get_prec(other.v_)) { mpfr_set(v_, other.v_, MPFR_RNDN); }
    Real(Real&& other) noexcept : Real(MPFR_PREC_MIN) { mpfr_swap(v_, other.v_); }
    ~Real() { mpfr_clear(v_); }

    /// Copy assignment adopts the precision of the source.
    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    Real& operator=(long value) {
        mpfr_set_si(v_, value, MPFR_RNDN);
        return *this;
    }

    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    /// Copy rounded (or widened) to the precision of `ctx`.
    Real at(const PrecisionContext& ctx) const {
        Real r(ctx);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

    Real operator-() const {
        Real r(bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) { return binary(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binary(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binary(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binary(mpfr_div, a, b); }
    friend Real operator+(Real a, long b) { return a += b; }
    friend Real operator-(Real a, long b) { return a -= b; }
    friend Real operator*(Real a, long b) { return a *= b; }
    friend Real operator/(Real a, long b) { return a /= b; }
    friend Real operator+(long a, Real b) { return b += a; }
    friend Real operator*(long a, Real b) { return b *= a; }
    friend Real operator-(long a, const Real& b) {
        Real r(b.bits());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.bits());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        return mpfr_cmp(a.v_, b.v_) <=> 0;
    }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const Real& a, long b) {
        if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
        return mpfr_cmp_si(a.v_, b) <=> 0;
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1. Undefined for zero.
    long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

    /// Scientific notation with `significant` digits, e.g. "-5.0000562847e-01".
    std::string to_sci(int significant) const;
    /// Positional notation with `significant` digits, e.g. "-0.50000562847".
    std::string to_fixed(int significant) const;
    /// Shortest-looking rendering used by reports: positional for
    /// 1e-4 <= |x| < 1e6, scientific otherwise.
    std::string to_string(int significant) const;

    void mul_2exp(long e) { mpfr_mul_2si(v_, v_, e, MPFR_RNDN); }

    friend Real sqrt(const Real& a) { return unary(mpfr_sqrt, a); }
    friend Real exp(const Real& a) { return unary(mpfr_exp, a); }
    friend Real log(const Real& a) { return unary(mpfr_log, a); }
    friend Real log10(const Real& a) { return unary(mpfr_log10, a); }
    friend Real sin(const Real& a) { return unary(mpfr_sin, a); }
    friend Real cos(const Real& a) { return unary(mpfr_cos, a); }
    friend Real abs(const Real& a) {
        Real r(a.bits());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real floor(const Real& a) {
        Real r(a.bits());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend Real pow(const Real& a, long n) {
        Real r(a.bits());
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) { return binary(mpfr_pow, a, b); }
    friend Real hypot(const Real& a, const Real& b) { return binary(mpfr_hypot, a, b); }
    friend Real atan2(const Real& y, const Real& x) { return binary(mpfr_atan2, y, x); }

    friend std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(20); }

private:
    explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }

    template <class Op>
    static Real binary(Op op, const Real& a, const Real& b) {
        Real r(std::max(a.bits(), b.bits()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    template <class Op>
    static Real unary(Op op, const Real& a) {
        Real r(a.bits());
        op(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

inline Real pi(const PrecisionContext& ctx) {
    Real r(ctx);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

/// 10^e at the precision of `ctx`.
inline Real pow10(double e, const PrecisionContext& ctx) {
    Real r(e, ctx);
    mpfr_exp10(r.get(), r.get(), MPFR_RNDN);
    return r;
}

/// Fused a += b * c, rounding once.
inline void fma_add(Real& a, const Real& b, const Real& c) {
    mpfr_fma(a.get(), b.get(), c.get(), a.get(), MPFR_RNDN);
}

/// Fused a -= b * c, rounding once.
inline void fma_sub(Real& a, const Real& b, const Real& c) {
    mpfr_fms(a.get(), b.get(), c.get(), a.get(), MPFR_RNDN);
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
}

}  // namespace stark::hp
