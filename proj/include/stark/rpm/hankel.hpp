#pragma once

#include <stdexcept>

#include "stark/rpm/riccati.hpp"

namespace stark::rpm {

/// Dimension D >= 2 and displacement d >= 0 of H_D^d.
struct HankelSpec {
    int dim = 2;
    int shift = 0;

    HankelSpec() = default;
    HankelSpec(int dim_, int shift_) : dim(dim_), shift(shift_) {
        if (dim < 2 || shift < 0) throw std::invalid_argument("Hankel determinant needs D >= 2 and d >= 0");
    }
    /// Series length needed: entries run up to f_{2D+d-1}.
    int series_length() const { return 2 * dim + shift; }
};

/// H_D^d and its partial derivatives, all carrying a common factor 2^exp2.
/// `equilibrated` is the determinant of the row-equilibrated Hankel matrix,
/// a scale-free residual suitable for convergence tests.
struct HankelValue {
    Complex value;
    Complex d_energy;
    Complex d_constant;
    long exp2 = 0;
    long row_scale_exp2 = 0;

    Complex unscaled_value() const;
    Complex unscaled_d_energy() const;
    Complex unscaled_d_constant() const;
    /// (value, d_energy, d_constant) * 2^(exp2 - row_scale_exp2)
    Complex equilibrated_value() const;
};

/// Determinant of the D x D matrix with (i, k) entry f_{d+i+k+1}, plus exact
/// derivatives through det' = det * tr(M^{-1} M'), or column replacement when
/// the matrix is exactly singular.
HankelValue hankel_det(const RiccatiSeries& series, const HankelSpec& spec, const PrecisionContext& ctx);

}  // namespace stark::rpm
