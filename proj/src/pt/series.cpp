#include "stark/pt/series.hpp"

#include <string>

namespace stark::pt {

namespace {

const Real& coeff_or(const std::vector<Real>& p, long j, const Real& zero) {
    return (j < 0 || j >= static_cast<long>(p.size())) ? zero : p[static_cast<std::size_t>(j)];
}

// Truncated Cauchy product coefficient [a * b]_k.
Real cauchy(const std::vector<Real>& a, const std::vector<Real>& b, int k, const PrecisionContext& ctx) {
    Real s(ctx);
    for (int i = 0; i <= k; ++i) fma_add(s, a[i], b[k - i]);
    return s;
}

void check_exact(const Real& got, const Real& exact, const char* what, const StateLabel& state,
                 const PrecisionContext& ctx) {
    Real scale = abs(exact);
    if (scale < 1L) scale = 1;
    if (!(abs(got - exact) <= hp::pow10(20.0 - ctx.digits(), ctx) * scale)) {
        throw PrecisionExhausted(std::string("perturbation coefficient ") + what + " of " + state.ket() +
                                 " misses its exact value (" + got.to_sci(25) + " vs " + exact.to_sci(25) +
                                 "); raise the working precision");
    }
}

}  // namespace

Real PTSeries::partial_sum(const Real& field, int upto) const {
    Real sum = energy.at(0);
    Real power = field;
    for (int k = 1; k <= upto && k <= order; ++k) {
        fma_add(sum, energy[k], power);
        power *= field;
    }
    return sum;
}

std::vector<Real> channel_charge_series(int nodes, int abs_m, int order, const PrecisionContext& ctx) {
    // The channel function is t^s e^{-t/2} p(t) with p = sum_k lambda^k p_k and
    // intermediate normalization [p_0]_nodes = 1, [p_k]_nodes = 0 for k >= 1.
    // In the monomial basis the unperturbed operator minus nu is bidiagonal:
    //   t^j -> (j - nodes) t^j - j (j + |m|) t^{j-1},
    // and the field term contributes t^2 p_{k-1}.
    const Real zero(ctx);
    std::vector<std::vector<Real>> p;
    p.reserve(order + 1);
    std::vector<Real> z;
    z.reserve(order + 1);

    z.emplace_back(Real(2L * nodes + abs_m + 1, ctx) / 2L);
    std::vector<Real> p0(nodes + 1, zero);
    p0[nodes] = 1;
    for (int j = nodes - 1; j >= 0; --j) {
        p0[j] = p0[j + 1] * static_cast<long>((j + 1) * (j + 1 + abs_m));
        p0[j] /= static_cast<long>(j - nodes);
    }
    p.push_back(std::move(p0));

    for (int k = 1; k <= order; ++k) {
        const int degree = nodes + 2 * k;
        std::vector<Real> c(degree + 1, zero);
        Real zk(ctx);
        for (int j = degree; j >= 0; --j) {
            Real next = j + 1 <= degree ? c[j + 1] * static_cast<long>((j + 1) * (j + 1 + abs_m)) : Real(ctx);
            if (j == nodes) {
                zk = coeff_or(p[k - 1], j - 2, zero) - next;
                continue;  // c[nodes] stays 0
            }
            Real rhs = -coeff_or(p[k - 1], j - 2, zero);
            for (int i = 1; i < k; ++i) fma_add(rhs, z[i], coeff_or(p[k - i], j, zero));
            if (j < nodes) fma_add(rhs, zk, p[0][j]);
            rhs += next;
            c[j] = rhs / static_cast<long>(j - nodes);
        }
        z.push_back(std::move(zk));
        p.push_back(std::move(c));
    }
    return z;
}

PTSeries pt_series(const StateLabel& state, int order, const PrecisionContext& ctx) {
    if (order < 0 || order > 200) throw std::invalid_argument("perturbation order must be in [0, 200]");
    ctx.require(order / 2 + 30, "pt_series at order " + std::to_string(order));

    const int n = state.n();
    const std::vector<Real> z1 = channel_charge_series(state.n1, state.abs_m(), order, ctx);
    const std::vector<Real> z2 = channel_charge_series(state.n2, state.abs_m(), order, ctx);

    // S(lambda) = Z1(lambda) + Z2(-lambda)
    std::vector<Real> s;
    s.reserve(order + 1);
    for (int j = 0; j <= order; ++j) s.push_back(j % 2 ? z1[j] - z2[j] : z1[j] + z2[j]);

    // u = sqrt(-2E) solves u S(F / (4 u^3)) = 1 order by order in F.
    const Real zero(ctx);
    std::vector<Real> u{Real(1L, ctx) / static_cast<long>(n)};
    std::vector<Real> u2{u[0] * u[0]};
    std::vector<Real> u3{u2[0] * u[0]};
    std::vector<Real> inv_u3{1L / u3[0]};
    // lambda_powers[j][k] = [lambda^j]_k; lambda has no F^0 term.
    std::vector<std::vector<Real>> lambda_powers(order + 1, std::vector<Real>(order + 1, zero));
    std::vector<Real> s_of_lambda(order + 1, zero);
    std::vector<Real> z1_of_lambda(order + 1, zero);
    std::vector<Real> z2_of_minus_lambda(order + 1, zero);
    s_of_lambda[0] = s[0];
    z1_of_lambda[0] = z1[0];
    z2_of_minus_lambda[0] = z2[0];

    for (int k = 1; k <= order; ++k) {
        if (k >= 2) {
            // extend u^2, u^3, 1/u^3 to order k-1 (u_{k-1} just became known)
            const int km = k - 1;
            u2.push_back(cauchy(u, u, km, ctx));
            u3.push_back(cauchy(u2, u, km, ctx));
            Real r(ctx);
            for (int i = 1; i <= km; ++i) fma_sub(r, u3[i], inv_u3[km - i]);
            inv_u3.push_back(r / u3[0]);
        }
        lambda_powers[1][k] = inv_u3[k - 1] / 4L;
        for (int j = 2; j <= k; ++j) {
            Real acc(ctx);
            for (int i = 1; i <= k - j + 1; ++i) fma_add(acc, lambda_powers[1][i], lambda_powers[j - 1][k - i]);
            lambda_powers[j][k] = std::move(acc);
        }
        for (int j = 1; j <= k; ++j) {
            fma_add(s_of_lambda[k], s[j], lambda_powers[j][k]);
            fma_add(z1_of_lambda[k], z1[j], lambda_powers[j][k]);
            if (j % 2) fma_sub(z2_of_minus_lambda[k], z2[j], lambda_powers[j][k]);
            else fma_add(z2_of_minus_lambda[k], z2[j], lambda_powers[j][k]);
        }
        Real acc(ctx);
        for (int j = 0; j < k; ++j) fma_add(acc, u[j], s_of_lambda[k - j]);
        u.push_back(-acc / static_cast<long>(n));
    }

    PTSeries out;
    out.state = state;
    out.order = order;
    for (int k = 0; k <= order; ++k) {
        out.energy.push_back(-cauchy(u, u, k, ctx) / 2L);
        out.a_plus.push_back(cauchy(u, z1_of_lambda, k, ctx));
        out.a_minus.push_back(cauchy(u, z2_of_minus_lambda, k, ctx));
    }

    // exact low orders: E_1 = 3 n q / 2, E_2 = -n^4 (17 n^2 - 3 q^2 - 9 m^2 + 19) / 16
    const long nl = n, ql = state.q(), ml = state.m;
    if (order >= 1) check_exact(out.energy[1], Real(3L * nl * ql, ctx) / 2L, "E_1", state, ctx);
    if (order >= 2) {
        Real e2(-(nl * nl * nl * nl) * (17 * nl * nl - 3 * ql * ql - 9 * ml * ml + 19), ctx);
        check_exact(out.energy[2], e2 / 16L, "E_2", state, ctx);
    }
    if (order >= 4 && state == StateLabel(0, 0, 0)) {
        check_exact(out.energy[4], Real(-3555L, ctx) / 64L, "E_4", state, ctx);
    }
    return out;
}

TruncationReport optimal_truncation(std::span<const Real> coeffs, const Real& field) {
    if (!(field > 0L)) throw std::invalid_argument("optimal truncation needs F > 0");
    if (coeffs.size() < 2) throw std::invalid_argument("optimal truncation needs at least one correction term");
    const int order = static_cast<int>(coeffs.size()) - 1;

    std::vector<Real> terms;
    terms.reserve(coeffs.size());
    Real power = field;
    power = 1;
    for (int k = 0; k <= order; ++k) {
        terms.push_back(coeffs[k] * power);
        power *= field;
    }

    int k_opt = -1;
    Real smallest = field;
    for (int k = 1; k <= order; ++k) {
        if (coeffs[k].is_zero()) continue;
        Real mag = abs(terms[k]);
        if (k_opt < 0 || mag < smallest) {
            smallest = std::move(mag);
            k_opt = k;
        }
    }

    TruncationReport rep{field, 0, terms[0], Real::with_bits(field.bits()), true};
    if (k_opt < 0) {  // all corrections vanish: the series is exact
        rep.divergent_regime = false;
        return rep;
    }
    rep.k_opt = k_opt;
    for (int k = 1; k <= k_opt; ++k) rep.partial_sum += terms[k];
    int omitted = -1;
    for (int k = k_opt + 1; k <= order; ++k) {
        if (!coeffs[k].is_zero()) {
            omitted = k;
            break;
        }
    }
    if (omitted < 0) {
        // no larger nonzero term follows: still shrinking at the last order
        rep.divergent_regime = false;
        rep.error_estimate = smallest;
    } else {
        rep.error_estimate = abs(terms[omitted]);
    }
    return rep;
}

TruncationReport optimal_truncation(const PTSeries& series, const Real& field) {
    return optimal_truncation(std::span<const Real>(series.energy), field);
}

Real asymptotic_width(const Real& field, const PrecisionContext& ctx) {
    if (!(field > 0L) || field > Real("0.05", ctx)) {
        throw FormulaDomainError("asymptotic width formula applies only for 0 < F <= 0.05, got F = " +
                                 field.to_string(10));
    }
    const Real f = field.at(ctx);
    Real poly = Real("25.57", ctx) * f;
    poly -= Real("8.916", ctx);
    poly *= f;
    poly += 1L;
    // Gamma = -2 Im E = 4/F exp(-2/(3F)) (...)
    Real gamma = exp(-Real(2L, ctx) / (f * 3L));
    gamma *= poly;
    gamma *= 4L;
    gamma /= f;
    return gamma;
}

}  // namespace stark::pt
