#include "stark/rpm/solver.hpp"

#include <cmath>

#include "stark/hp/newton.hpp"
#include "stark/pt/series.hpp"

namespace stark::rpm {

namespace {

Real relative_distance(const Complex& a, const Complex& b) {
    Real scale = abs(b);
    Real d = abs(a - b);
    if (scale.is_zero()) return d;
    return d / scale;
}

std::optional<Real> log_relative_change(const Real& now, const Real& before, const PrecisionContext& ctx) {
    if (now.is_zero()) return std::nullopt;
    Real rel = abs((now - before) / now);
    const Real floor = hp::pow10(-ctx.digits(), ctx);
    if (rel < floor) rel = floor;
    return log10(rel);
}

}  // namespace

int precision_rule(double field) {
    if (!(field > 0.0)) return 60;
    const double needed = std::ceil(2.0 * (2.0 / (3.0 * field)) / std::log(10.0)) + 40.0;
    return needed > 60.0 ? static_cast<int>(needed) : 60;
}

Seed seed_from_perturbation(const pt::StateLabel& state, const Real& field, const PrecisionContext& ctx) {
    const int n = state.n();
    Complex a(Real(2L * state.n1 + state.abs_m() + 1, ctx) / static_cast<long>(2 * n), Real(ctx));
    if (!(field > 0L)) {
        return {Complex(Real(-1L, ctx) / static_cast<long>(2 * n * n), Real(ctx)), std::move(a)};
    }
    // order limited by the PT precision requirement digits >= K/2 + 30
    const int order = std::min(200, 2 * (ctx.digits() - 30));
    if (order < 4) throw std::invalid_argument("too few digits to seed from perturbation theory");
    const pt::PTSeries series = pt::pt_series(state, order, ctx);
    const pt::TruncationReport trunc = pt::optimal_truncation(series, field);
    // A from the same truncation order; the zeroth-order value leaves Newton
    // outside the basin of the resonance root.
    a.re = series.a_plus[0];
    Real power = field.at(ctx);
    for (int k = 1; k <= trunc.k_opt; ++k) {
        fma_add(a.re, series.a_plus[k], power);
        power *= field;
    }
    Real im(ctx);
    im = -1L;
    im /= 100000000L;
    if (state == pt::StateLabel(0, 0, 0) && field <= Real("0.05", ctx)) {
        im = -pt::asymptotic_width(field, ctx) / 2L;
    }
    return {Complex(trunc.partial_sum.at(ctx), std::move(im)), std::move(a)};
}

ChannelPair evaluate_channels(const Complex& energy, const Complex& constant, const Real& field, int m,
                              const HankelSpec& spec, const PrecisionContext& ctx) {
    const int length = spec.series_length();
    RiccatiSeries xi = riccati_coefficients(energy, constant, field, Channel::xi(m), length, ctx);
    RiccatiSeries eta = riccati_coefficients(energy, constant, field, Channel::eta(m), length, ctx);
    return {hankel_det(xi, spec, ctx), hankel_det(eta, spec, ctx)};
}

ResonanceEstimate solve_resonance(const Real& field, int m, const Seed& seed, const HankelSpec& spec,
                                  const PrecisionContext& ctx, const SolveOptions& opts) {
    ctx.require(30, "solve_resonance");
    if (opts.enforce_precision_rule) ctx.require(precision_rule(field.to_double()), "solve_resonance at this field");

    // Each determinant is divided by |dH/dE||E| + |dH/dA||A|, making the
    // residual a relative distance to the root; a per-row constant factor
    // leaves the Newton step unchanged.
    auto system = [&](const hp::Point2& x) {
        ChannelPair pair = evaluate_channels(x[0], x[1], field, m, spec, ctx);
        const Real mag_e = abs(x[0]);
        const Real mag_a = abs(x[1]);
        auto row = [&](const HankelValue& h, Complex& r, Complex& je, Complex& ja) {
            Real scale = abs(h.d_energy) * mag_e;
            fma_add(scale, abs(h.d_constant), mag_a);
            r = h.value;
            je = h.d_energy;
            ja = h.d_constant;
            if (scale.is_zero()) return;
            r /= scale;
            je /= scale;
            ja /= scale;
        };
        hp::SystemValue v{{Complex(ctx), Complex(ctx)}, {Complex(ctx), Complex(ctx), Complex(ctx), Complex(ctx)}};
        row(pair.xi, v.residual[0], v.jacobian[0], v.jacobian[1]);
        row(pair.eta, v.residual[1], v.jacobian[2], v.jacobian[3]);
        return v;
    };

    hp::NewtonOptions nopts;
    nopts.residual_tol_log10 = -(ctx.digits() - opts.guard_digits);
    nopts.step_tol_log10 = nopts.residual_tol_log10;
    nopts.max_iter = opts.max_iter;
    // Roots of large determinants come in tight clusters (exactly multiple at F = 0).
    nopts.accelerate_multiple_roots = true;
    nopts.stall_accept_log10 = -ctx.digits() / 2.0;

    hp::NewtonResult res = [&] {
        try {
            return hp::newton2(system, {seed.energy.at(ctx), seed.constant.at(ctx)}, nopts, ctx);
        } catch (const hp::NewtonError& e) {
            throw SolveError("RPM solve failed at D=" + std::to_string(spec.dim) + ": " + e.what(),
                             e.last_iterate()[0], e.last_iterate()[1], e.residual_norm(), spec.dim);
        }
    }();

    ResonanceEstimate est{res.root[0], res.root[1], res.root[0].im * -2L, spec.dim, spec.shift, std::nullopt,
                          res.iterations, res.residual_norm, false};
    est.spurious = relative_distance(est.energy, seed.energy) > Real(opts.jump_threshold, ctx);
    return est;
}

ConvergenceTrace converge_scan(const Real& field, int m, const Seed& seed, int dim_from, int dim_to, int shift,
                               const PrecisionContext& ctx, const SolveOptions& opts) {
    if (dim_from < 2 || dim_to < dim_from) throw std::invalid_argument("converge_scan needs 2 <= D_from <= D_to");
    const Real jump(opts.jump_threshold, ctx);
    std::vector<TraceRow> rows;
    std::vector<int> reseeded;
    std::vector<int> skipped;
    std::optional<ResonanceEstimate> last;

    for (int dim = dim_from; dim <= dim_to; ++dim) {
        const HankelSpec spec(dim, shift);
        std::optional<ResonanceEstimate> est;
        if (last) {
            try {
                Seed tracked{last->energy, last->constant};
                est = solve_resonance(field, m, tracked, spec, ctx, opts);
                if (relative_distance(est->energy, last->energy) > jump) est.reset();
            } catch (const SolveError&) {
                est.reset();
            }
            if (!est) reseeded.push_back(dim);
        }
        if (!est) {
            std::string why;
            try {
                est = solve_resonance(field, m, seed, spec, ctx, opts);
                if (est->spurious) {
                    why = "reseeded root jumped to " + est->energy.re.to_string(20) + " from seed " +
                          seed.energy.re.to_string(20);
                    est.reset();
                }
            } catch (const SolveError& e) {
                why = e.what();
            }
            if (!est) {
                skipped.push_back(dim);
                if (dim == dim_to && !last) {
                    throw SolveError("root tracking broke at D=" + std::to_string(dim) + ": " + why, seed.energy,
                                     seed.constant, Real(ctx), dim);
                }
                continue;
            }
        }

        TraceRow row{dim, est->energy, est->constant, std::nullopt, std::nullopt};
        if (last) {
            row.log10_rel_re = log_relative_change(est->energy.re, last->energy.re, ctx);
            row.log10_rel_im = log_relative_change(est->energy.im, last->energy.im, ctx);
            if (row.log10_rel_re) est->conv_log10 = row.log10_rel_re->to_double();
        }
        rows.push_back(std::move(row));
        last = std::move(est);
    }
    return ConvergenceTrace{std::move(rows), std::move(*last), std::move(reseeded), std::move(skipped)};
}

}  // namespace stark::rpm
