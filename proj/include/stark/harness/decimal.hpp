#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "stark/hp/real.hpp"

namespace stark::harness {

using hp::PrecisionContext;
using hp::Real;

/// A decimal literal as printed in a table: "-0.127 146 612", "9.4983e-56",
/// "< 1e-13". Spaces are typographic and ignored; a leading '<' marks an
/// upper bound.
struct Decimal {
    std::string text;
    std::string digits;  // significant digits, leading zeros stripped
    long exp10 = 0;      // value = 0.d1d2... * 10^exp10
    bool negative = false;
    bool bound = false;

    int significant() const { return static_cast<int>(digits.size()); }
    /// Exponent of the last printed digit: one unit there is 10^last_place().
    long last_place() const { return exp10 - significant(); }
    Real value(const PrecisionContext& ctx) const;
};

/// Throws std::invalid_argument on anything that is not a plain decimal.
Decimal parse_decimal(std::string_view text);

/// Number of leading significant digits on which two values agree, in the
/// sense |a - b| < 5 * 10^-k * |b|. Capped at `cap`; `cap` when a == b.
int agreeing_digits(const Real& a, const Real& b, int cap);

/// |value - ref| < one unit in the last printed place of ref, so a reference
/// that was either rounded or truncated from `value` passes.
bool within_last_place(const Real& value, const Decimal& ref, const PrecisionContext& ctx);

/// Positional rendering with `significant` digits and trailing zeros dropped
/// ("-0.5", "-0.1426186075727"); scientific below 1e-4.
std::string format_decimal(const Real& x, int significant);

}  // namespace stark::harness
