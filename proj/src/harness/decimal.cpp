#include "stark/harness/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace stark::harness {

Decimal parse_decimal(std::string_view text) {
    Decimal d;
    d.text = std::string(text);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    const auto bad = [&] { return std::invalid_argument("not a decimal literal: '" + d.text + "'"); };
    std::size_t i = 0;
    if (i < s.size() && s[i] == '<') {
        d.bound = true;
        ++i;
    }
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) d.negative = s[i++] == '-';

    std::string mant;
    long point = -1;
    for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
        if (s[i] == '.') {
            if (point >= 0) throw bad();
            point = static_cast<long>(mant.size());
        } else {
            mant += s[i];
        }
    }
    if (mant.empty()) throw bad();
    if (point < 0) point = static_cast<long>(mant.size());
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw bad();
        const std::string tail = s.substr(i + 1);
        std::size_t used = 0;
        try {
            exponent = std::stol(tail, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != tail.size()) throw bad();
    }
    const std::size_t lead = std::min(mant.find_first_not_of('0'), mant.size());
    d.digits = mant.substr(lead);
    if (d.digits.empty()) {
        d.digits = "0";
        d.exp10 = exponent + point - static_cast<long>(mant.size()) + 1;
        d.negative = false;
    } else {
        d.exp10 = point - static_cast<long>(lead) + exponent;
    }
    return d;
}

Real Decimal::value(const PrecisionContext& ctx) const {
    std::string s = negative ? "-0." : "0.";
    s += digits;
    s += "e" + std::to_string(exp10);
    return Real(s, ctx);
}

int agreeing_digits(const Real& a, const Real& b, int cap) {
    const Real diff = abs(a - b);
    if (diff.is_zero()) return cap;
    if (b.is_zero()) return 0;
    const Real rel = diff / abs(b) / 5L;
    const double l = -std::log10(rel.to_double());
    if (!std::isfinite(l)) return l > 0 ? cap : 0;
    return std::clamp(static_cast<int>(std::floor(l)), 0, cap);
}

bool within_last_place(const Real& value, const Decimal& ref, const PrecisionContext& ctx) {
    const Real unit = hp::pow10(static_cast<int>(ref.last_place()), ctx);
    return abs(value - ref.value(ctx)) < unit;
}

std::string format_decimal(const Real& x, int significant) {
    if (x.is_zero()) return "0";
    std::string s = x.to_string(significant);
    const std::size_t e = s.find('e');
    std::string mant = s.substr(0, e);
    const std::string exp = e == std::string::npos ? "" : s.substr(e);
    if (mant.find('.') != std::string::npos) {
        mant.erase(mant.find_last_not_of('0') + 1);
        if (mant.back() == '.') mant.pop_back();
    }
    return mant + exp;
}

}  // namespace stark::harness
