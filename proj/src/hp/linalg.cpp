#include "stark/hp/linalg.hpp"

#include <string>
#include <utility>

namespace stark::hp {

Complex ScaledDeterminant::value() const {
    Complex v = mantissa;
    v.re.mul_2exp(exp2);
    v.im.mul_2exp(exp2);
    return v;
}

ComplexLu::ComplexLu(ComplexMatrix a) : lu_(std::move(a)) {
    if (!lu_.square() || lu_.rows() == 0) {
        throw std::invalid_argument("LU factorization needs a non-empty square matrix, got " + std::to_string(lu_.rows()) + "x" +
                                    std::to_string(lu_.cols()));
    }
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    row_exp2_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        perm_[i] = i;
        long e = 0;
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            const Complex& z = lu_(i, j);
            if (!z.is_finite()) throw std::domain_error("non-finite matrix entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            for (const Real* c : {&z.re, &z.im}) {
                if (c->is_zero()) continue;
                if (!any || c->exponent2() > e) e = c->exponent2();
                any = true;
            }
        }
        // exponent2 puts |x| in [2^(e-1), 2^e); shift the row max into [1, 2)
        row_exp2_[i] = any ? e - 1 : 0;
        if (any) {
            for (std::size_t j = 0; j < n; ++j) {
                lu_(i, j).re.mul_2exp(-row_exp2_[i]);
                lu_(i, j).im.mul_2exp(-row_exp2_[i]);
            }
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = max_abs_component(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real m = max_abs_component(lu_(i, k));
            if (m > best) {
                best = std::move(m);
                piv = i;
            }
        }
        if (best.is_zero()) {
            singular_ = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
            swap_sign_ = -swap_sign_;
        }
        const Complex& pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (lu_(i, k).is_zero()) continue;
            Complex l = lu_(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j) fma_sub(lu_(i, j), l, lu_(k, j));
            lu_(i, k) = std::move(l);
        }
    }
}

ScaledDeterminant ComplexLu::determinant() const {
    const std::size_t n = size();
    ScaledDeterminant det{lu_(0, 0), 0};
    det.mantissa.re = 1;
    det.mantissa.im = 0;
    if (singular_) {
        det.mantissa.re = 0;
        return det;
    }
    for (std::size_t k = 0; k < n; ++k) {
        det.mantissa *= lu_(k, k);
        det.exp2 += row_exp2_[k];
        // renormalize so long products of pivots cannot drift toward the exponent limits
        const Real mag = max_abs_component(det.mantissa);
        if (!mag.is_zero()) {
            const long e = mag.exponent2();
            det.mantissa.re.mul_2exp(-e);
            det.mantissa.im.mul_2exp(-e);
            det.exp2 += e;
        }
    }
    if (swap_sign_ < 0) det.mantissa = -det.mantissa;
    return det;
}

long ComplexLu::row_scale_exp2() const {
    long sum = 0;
    for (long e : row_exp2_) sum += e;
    return sum;
}

std::vector<Complex> ComplexLu::solve(const std::vector<Complex>& b) const {
    const std::size_t n = size();
    if (b.size() != n) throw std::invalid_argument("right-hand side has wrong length");
    if (singular_) throw std::domain_error("cannot solve with a singular matrix");
    std::vector<Complex> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex v = b[perm_[i]];
        v.re.mul_2exp(-row_exp2_[perm_[i]]);
        v.im.mul_2exp(-row_exp2_[perm_[i]]);
        x.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) fma_sub(x[i], lu_(i, j), x[j]);
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) fma_sub(x[i], lu_(i, j), x[j]);
        x[i] /= lu_(i, i);
    }
    return x;
}

ComplexMatrix ComplexLu::inverse() const {
    const std::size_t n = size();
    const Complex zero(Real::with_bits(lu_(0, 0).bits()), Real::with_bits(lu_(0, 0).bits()));
    ComplexMatrix inv(n, n, zero);
    std::vector<Complex> e(n, zero);
    for (std::size_t j = 0; j < n; ++j) {
        e[j].re = 1;
        std::vector<Complex> col = solve(e);
        e[j].re = 0;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = std::move(col[i]);
    }
    return inv;
}

ScaledDeterminant det_lu_scaled(const ComplexMatrix& a) {
    if (a.rows() == 0) throw std::invalid_argument("determinant of an empty matrix");
    return ComplexLu(a).determinant();
}

Complex det_lu(const ComplexMatrix& a, const PrecisionContext& ctx) {
    if (a.rows() == 0) return Complex(1, 0, ctx);
    return det_lu_scaled(a).value();
}

}  // namespace stark::hp
