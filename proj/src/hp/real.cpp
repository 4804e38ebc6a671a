#include "stark/hp/real.hpp"

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace stark::hp {

namespace {

struct Digits {
    bool negative = false;
    std::string digits;  // significand digits, value = 0.d1d2... * 10^exp10
    long exp10 = 0;
};

Digits decompose(mpfr_srcptr v, int significant) {
    mpfr_exp_t e = 0;
    std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(significant), v, MPFR_RNDN),
                                               mpfr_free_str);
    Digits d;
    std::string s(raw.get());
    if (!s.empty() && s[0] == '-') {
        d.negative = true;
        s.erase(0, 1);
    }
    d.digits = std::move(s);
    d.exp10 = static_cast<long>(e);
    return d;
}

std::string special(mpfr_srcptr v) {
    if (mpfr_nan_p(v)) return "nan";
    return mpfr_sgn(v) < 0 ? "-inf" : "inf";
}

}  // namespace

Real::Real(std::string_view text, const PrecisionContext& ctx) : Real(ctx.bits()) {
    std::string buf(text);
    char* end = nullptr;
    mpfr_strtofr(v_, buf.c_str(), &end, 10, MPFR_RNDN);
    if (buf.empty() || end == buf.c_str() || *end != '\0') {
        throw std::invalid_argument("not a decimal number: '" + buf + "'");
    }
}

std::string Real::to_sci(int significant) const {
    if (!is_finite()) return special(v_);
    if (is_zero()) return "0";
    Digits d = decompose(v_, std::max(significant, 1));
    std::string out = d.negative ? "-" : "";
    out += d.digits[0];
    if (d.digits.size() > 1) {
        out += '.';
        out.append(d.digits, 1);
    }
    char expbuf[32];
    std::snprintf(expbuf, sizeof expbuf, "e%+03ld", d.exp10 - 1);
    return out + expbuf;
}

std::string Real::to_fixed(int significant) const {
    if (!is_finite()) return special(v_);
    if (is_zero()) return "0";
    Digits d = decompose(v_, std::max(significant, 1));
    std::string out = d.negative ? "-" : "";
    if (d.exp10 <= 0) {
        out += "0.";
        out.append(static_cast<size_t>(-d.exp10), '0');
        out += d.digits;
    } else if (static_cast<size_t>(d.exp10) >= d.digits.size()) {
        out += d.digits;
        out.append(static_cast<size_t>(d.exp10) - d.digits.size(), '0');
    } else {
        out.append(d.digits, 0, static_cast<size_t>(d.exp10));
        out += '.';
        out.append(d.digits, static_cast<size_t>(d.exp10));
    }
    return out;
}

std::string Real::to_string(int significant) const {
    if (!is_finite() || is_zero()) return to_sci(significant);
    const long e = exponent2();
    // 2^-13 ~ 1.2e-4, 2^20 ~ 1e6
    if (e > -13 && e <= 20) return to_fixed(significant);
    return to_sci(significant);
}

}  // namespace stark::hp
