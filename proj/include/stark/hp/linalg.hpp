#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stark/hp/complex.hpp"

namespace stark::hp {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<Real>;

/// Determinant split as mantissa * 2^exp2 so that badly scaled matrices
/// never need the full value materialized.
struct ScaledDeterminant {
    Complex mantissa;
    long exp2 = 0;

    Complex value() const;
};

/// LU factorization with partial pivoting of a row-equilibrated copy of a
/// complex matrix. Each row i of the input is multiplied by 2^-row_exp2[i]
/// (exact) so that its largest component lies in [1, 2).
class ComplexLu {
public:
    explicit ComplexLu(ComplexMatrix a);

    std::size_t size() const { return lu_.rows(); }
    /// True when elimination met an exactly zero pivot column.
    bool singular() const { return singular_; }
    ScaledDeterminant determinant() const;
    /// Sum of the per-row equilibration exponents; det(A) * 2^-row_scale_exp2()
    /// is the determinant of the equilibrated matrix.
    long row_scale_exp2() const;
    /// Solves A x = b for the original (unscaled) matrix.
    std::vector<Complex> solve(const std::vector<Complex>& b) const;
    /// Inverse of the original matrix. Throws when singular.
    ComplexMatrix inverse() const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    std::vector<long> row_exp2_;
    int swap_sign_ = 1;
    bool singular_ = false;
};

ScaledDeterminant det_lu_scaled(const ComplexMatrix& a);

/// Determinant by partially pivoted LU. Exactly zero for a structurally
/// zero pivot column.
Complex det_lu(const ComplexMatrix& a, const PrecisionContext& ctx);

}  // namespace stark::hp
