#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "stark/hp/complex.hpp"

namespace stark::rpm {

using hp::Complex;
using hp::PrecisionContext;
using hp::Real;

/// One of the two separated parabolic equations
///   Phi'' + [(1 - m^2)/(4x^2) + E/2 - sigma F x/4 + A_sigma/x] Phi = 0,
/// with A_+ = A (x = xi) and A_- = 1 - A (x = eta).
struct Channel {
    int sigma = 1;
    int m = 0;

    Channel(int sigma_, int m_) : sigma(sigma_), m(m_) {
        if (sigma != 1 && sigma != -1) throw std::invalid_argument("channel sigma must be +1 or -1");
    }
    static Channel xi(int m) { return Channel(1, m); }
    static Channel eta(int m) { return Channel(-1, m); }

    int abs_m() const { return std::abs(m); }
    /// Regularization exponent s = (|m| + 1) / 2.
    Real s(const PrecisionContext& ctx) const { return Real(static_cast<long>(abs_m() + 1), ctx) / 2L; }
    /// A_sigma for the shared separation constant A.
    Complex constant(const Complex& a) const;
};

/// Taylor coefficients f_j of f(x) = s/x - Phi'/Phi together with their
/// partial derivatives in E and A.
struct RiccatiSeries {
    std::vector<Complex> coeffs;
    std::vector<Complex> d_energy;
    std::vector<Complex> d_constant;
    Channel channel;
    Real field;

    std::size_t size() const { return coeffs.size(); }
};

/// f_j for j < length from the recursion obtained by substituting the
/// series into  x f' = x f^2 - (|m| + 1) f + A_sigma + (E/2) x - (sigma F/4) x^2:
///   (j + |m| + 1) f_j = sum_{i<j} f_i f_{j-1-i} + A_sigma [j=0] + E/2 [j=1] - sigma F/4 [j=2].
RiccatiSeries riccati_coefficients(const Complex& energy, const Complex& constant, const Real& field,
                                   const Channel& channel, int length, const PrecisionContext& ctx);

/// Coefficients of x f' - x f^2 + (|m|+1) f - A_sigma - (E/2) x + (sigma F/4) x^2
/// through x^{length-1}, evaluated from the truncated series. Every entry
/// vanishes (to rounding) for a correctly generated series.
std::vector<Complex> ode_residual(const RiccatiSeries& series, const Complex& energy, const Complex& constant,
                                  const PrecisionContext& ctx);

}  // namespace stark::rpm
