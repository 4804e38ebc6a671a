#include "stark/rpm/riccati.hpp"

namespace stark::rpm {

Complex Channel::constant(const Complex& a) const {
    if (sigma == 1) return a;
    Complex c = -a;
    c.re += 1L;
    return c;
}

RiccatiSeries riccati_coefficients(const Complex& energy, const Complex& constant, const Real& field,
                                   const Channel& channel, int length, const PrecisionContext& ctx) {
    if (length < 3) throw std::invalid_argument("Riccati series needs at least 3 coefficients");
    if (field < 0L) throw std::invalid_argument("field strength must be non-negative");

    RiccatiSeries s{{}, {}, {}, channel, field.at(ctx)};
    s.coeffs.reserve(length);
    s.d_energy.reserve(length);
    s.d_constant.reserve(length);
    const long shift = channel.abs_m() + 1;

    for (int j = 0; j < length; ++j) {
        Complex f(ctx), fe(ctx), fa(ctx);
        // symmetric convolution: sum_{i=0}^{j-1} f_i f_{j-1-i}
        const int last = j - 1;
        for (int i = 0; 2 * i < last; ++i) {
            const int k = last - i;
            Complex prod = s.coeffs[i] * s.coeffs[k];
            f += prod;
            f += prod;
            // d(f_i f_k) = f_i' f_k + f_i f_k', doubled for the mirrored pair
            Complex de = s.d_energy[i] * s.coeffs[k];
            fma_add(de, s.coeffs[i], s.d_energy[k]);
            fe += de;
            fe += de;
            Complex da = s.d_constant[i] * s.coeffs[k];
            fma_add(da, s.coeffs[i], s.d_constant[k]);
            fa += da;
            fa += da;
        }
        if (last >= 0 && last % 2 == 0) {
            const int h = last / 2;
            fma_add(f, s.coeffs[h], s.coeffs[h]);
            Complex t = s.coeffs[h] * s.d_energy[h];
            fe += t;
            fe += t;
            Complex u = s.coeffs[h] * s.d_constant[h];
            fa += u;
            fa += u;
        }
        if (j == 0) {
            f += channel.constant(constant);
            fa.re += static_cast<long>(channel.sigma);
        } else if (j == 1) {
            f += energy / 2L;
            fe.re += Real(1L, ctx) / 2L;
        } else if (j == 2) {
            Real q = s.field / 4L;
            if (channel.sigma == 1) f.re -= q;
            else f.re += q;
        }
        f /= shift + j;
        fe /= shift + j;
        fa /= shift + j;
        s.coeffs.push_back(std::move(f));
        s.d_energy.push_back(std::move(fe));
        s.d_constant.push_back(std::move(fa));
    }
    return s;
}

std::vector<Complex> ode_residual(const RiccatiSeries& series, const Complex& energy, const Complex& constant,
                                  const PrecisionContext& ctx) {
    const auto& f = series.coeffs;
    const int n = static_cast<int>(f.size());
    const long shift = series.channel.abs_m() + 1;
    std::vector<Complex> res;
    res.reserve(n);
    for (int j = 0; j < n; ++j) {
        // [x f']_j = j f_j ; [x f^2]_j = sum_{i<=j-1} f_i f_{j-1-i}
        Complex r = f[j] * (j + shift);
        for (int i = 0; i <= j - 1; ++i) fma_sub(r, f[i], f[j - 1 - i]);
        if (j == 0) r -= series.channel.constant(constant);
        if (j == 1) r -= energy / 2L;
        if (j == 2) {
            Real q = series.field.at(ctx) / 4L;
            if (series.channel.sigma == 1) r.re += q;
            else r.re -= q;
        }
        res.push_back(std::move(r));
    }
    return res;
}

}  // namespace stark::rpm
