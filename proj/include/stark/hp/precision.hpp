#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace stark::hp {

/// Working precision, in decimal digits, for a single computation.
///
/// Every engine entry point takes one of these explicitly; there is no
/// process-wide default. Rounding is always round-to-nearest.
class PrecisionContext {
public:
    explicit PrecisionContext(int digits) : digits_(digits) {
        if (digits < 1) {
            throw std::invalid_argument("precision must be at least one decimal digit, got " +
                                        std::to_string(digits));
        }
    }

    int digits() const { return digits_; }

    /// Binary precision used for MPFR values: ceil(digits * log2(10)) plus 8 guard bits.
    mpfr_prec_t bits() const {
        return static_cast<mpfr_prec_t>(digits_ * 3.321928094887362 + 0.999999) + 8;
    }

    /// Throws std::invalid_argument when this context is below `min_digits`.
    void require(int min_digits, const std::string& who) const {
        if (digits_ < min_digits) {
            throw std::invalid_argument(who + " requires at least " + std::to_string(min_digits) +
                                        " digits, context has " + std::to_string(digits_));
        }
    }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
};

}  // namespace stark::hp
