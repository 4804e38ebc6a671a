#include "stark/rpm/hankel.hpp"

#include <string>

#include "stark/hp/linalg.hpp"

namespace stark::rpm {

namespace {

Complex shifted(Complex z, long e) {
    z.re.mul_2exp(e);
    z.im.mul_2exp(e);
    return z;
}

hp::ComplexMatrix hankel_matrix(const std::vector<Complex>& f, const HankelSpec& spec, const PrecisionContext& ctx) {
    const std::size_t n = static_cast<std::size_t>(spec.dim);
    hp::ComplexMatrix m(n, n, Complex(ctx));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) m(i, k) = f[static_cast<std::size_t>(spec.shift) + i + k + 1];
    return m;
}

}  // namespace

Complex HankelValue::unscaled_value() const { return shifted(value, exp2); }
Complex HankelValue::unscaled_d_energy() const { return shifted(d_energy, exp2); }
Complex HankelValue::unscaled_d_constant() const { return shifted(d_constant, exp2); }
Complex HankelValue::equilibrated_value() const { return shifted(value, exp2 - row_scale_exp2); }

HankelValue hankel_det(const RiccatiSeries& series, const HankelSpec& spec, const PrecisionContext& ctx) {
    if (static_cast<int>(series.size()) < spec.series_length()) {
        throw std::invalid_argument("Riccati series of length " + std::to_string(series.size()) +
                                    " is too short for H_" + std::to_string(spec.dim) + "^" +
                                    std::to_string(spec.shift));
    }
    const std::size_t n = static_cast<std::size_t>(spec.dim);
    hp::ComplexMatrix m = hankel_matrix(series.coeffs, spec, ctx);
    hp::ComplexMatrix me = hankel_matrix(series.d_energy, spec, ctx);
    hp::ComplexMatrix ma = hankel_matrix(series.d_constant, spec, ctx);

    hp::ComplexLu lu(m);
    const hp::ScaledDeterminant det = lu.determinant();
    HankelValue out{det.mantissa, Complex(ctx), Complex(ctx), det.exp2, lu.row_scale_exp2()};

    if (!lu.singular()) {
        const hp::ComplexMatrix inv = lu.inverse();
        Complex tr_e(ctx), tr_a(ctx);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                fma_add(tr_e, inv(k, i), me(i, k));
                fma_add(tr_a, inv(k, i), ma(i, k));
            }
        out.d_energy = det.mantissa * tr_e;
        out.d_constant = det.mantissa * tr_a;
        return out;
    }

    // det' = sum_k det(M with column k replaced by M'_{:,k})
    out.value = Complex(ctx);
    out.exp2 = 0;
    for (const auto* deriv : {&me, &ma}) {
        Complex sum(ctx);
        for (std::size_t c = 0; c < n; ++c) {
            hp::ComplexMatrix repl = m;
            for (std::size_t i = 0; i < n; ++i) repl(i, c) = (*deriv)(i, c);
            sum += hp::det_lu(repl, ctx);
        }
        (deriv == &me ? out.d_energy : out.d_constant) = std::move(sum);
    }
    return out;
}

}  // namespace stark::rpm
