#include "stark/hp/newton.hpp"

#include <cmath>

namespace stark::hp {

namespace {

Real max_modulus(const Complex& a, const Complex& b) {
    Real x = abs(a);
    Real y = abs(b);
    return x < y ? y : x;
}

// Plain Newton approaches a root of multiplicity p linearly with step ratio
// 1 - 1/p. Needs three consecutive ratios agreeing to 0.01.
long estimate_multiplicity(const std::vector<Real>& steps) {
    const std::size_t n = steps.size();
    if (n < 4) return 1;
    double ratios[3];
    for (int k = 0; k < 3; ++k) {
        const Real& prev = steps[n - 2 - k];
        if (prev.is_zero()) return 1;
        ratios[k] = (steps[n - 1 - k] / prev).to_double();
    }
    if (!(ratios[0] > 0.4 && ratios[0] < 0.995)) return 1;
    if (std::abs(ratios[0] - ratios[1]) >= 0.01 || std::abs(ratios[1] - ratios[2]) >= 0.01) return 1;
    const long p = std::lround(1.0 / (1.0 - ratios[0]));
    return p >= 2 ? p : 1;
}

}  // namespace

NewtonResult newton2(const SystemFn& system, Point2 seed, const NewtonOptions& opts, const PrecisionContext& ctx) {
    if (opts.residual_tol_log10 < 5.0 - ctx.digits()) {
        throw std::invalid_argument("Newton residual tolerance 1e" + std::to_string(opts.residual_tol_log10) +
                                    " is below the working-precision floor 1e" + std::to_string(5 - ctx.digits()));
    }
    const Real tol = pow10(opts.residual_tol_log10, ctx);
    const Real singular_floor = pow10(5.0 - ctx.digits(), ctx);
    std::optional<Real> step_tol;
    if (opts.step_tol_log10) step_tol = pow10(*opts.step_tol_log10, ctx);

    NewtonResult out{std::move(seed), 0, Real(ctx), Real(ctx), {}, false};
    Point2& x = out.root;
    // raw step sizes since the last accelerated step
    std::vector<Real> plain_steps;
    std::optional<Real> stall_accept;
    if (opts.stall_accept_log10) stall_accept = pow10(*opts.stall_accept_log10, ctx);
    Point2 best = x;
    Real best_residual(ctx);
    Real marker(ctx);
    int marker_at = -1;

    for (int it = 0;; ++it) {
        SystemValue v = system(x);
        if (!v.residual[0].is_finite() || !v.residual[1].is_finite()) {
            throw NewtonError(NewtonError::Kind::non_finite, "residual is not finite at iteration " + std::to_string(it), x,
                              Real(ctx), std::nullopt);
        }
        out.residual_norm = max_modulus(v.residual[0], v.residual[1]);
        out.iterations = it;
        if (out.residual_norm <= tol) {
            out.converged_on_residual = true;
            return out;
        }
        if (it > 0 && step_tol && out.last_step <= *step_tol) return out;
        if (marker_at < 0 || out.residual_norm < best_residual) {
            best = x;
            best_residual = out.residual_norm;
        }
        if (marker_at < 0 || out.residual_norm * 10L < marker) {
            marker = out.residual_norm;
            marker_at = it;
        }
        if (stall_accept && it - marker_at >= opts.stall_window && best_residual <= *stall_accept) {
            x = std::move(best);
            out.residual_norm = std::move(best_residual);
            out.stalled = true;
            return out;
        }
        if (it == opts.max_iter) {
            throw NewtonError(NewtonError::Kind::max_iterations,
                              "Newton did not converge in " + std::to_string(opts.max_iter) +
                                  " iterations (residual " + out.residual_norm.to_sci(6) + ")",
                              x, out.residual_norm, std::nullopt);
        }

        const Jacobian2& j = v.jacobian;
        Complex det = j[0] * j[3];
        fma_sub(det, j[1], j[2]);
        Real jnorm = max_modulus(j[0], j[1]);
        if (Real lower = max_modulus(j[2], j[3]); jnorm < lower) jnorm = std::move(lower);
        const Real det_abs = abs(det);
        if (det_abs.is_zero() || det_abs < jnorm * jnorm * singular_floor) {
            std::optional<Real> cond;
            if (!det_abs.is_zero()) cond = jnorm * jnorm / det_abs;
            throw NewtonError(NewtonError::Kind::singular_jacobian,
                              "singular Jacobian at iteration " + std::to_string(it) +
                                  (cond ? " (condition ~" + cond->to_sci(3) + ")" : std::string(" (exactly singular)")),
                              x, out.residual_norm, std::move(cond));
        }
        Complex d0 = j[3] * v.residual[0];
        fma_sub(d0, j[1], v.residual[1]);
        Complex d1 = j[0] * v.residual[1];
        fma_sub(d1, j[2], v.residual[0]);
        d0 /= det;
        d1 /= det;

        if (opts.accelerate_multiple_roots) {
            plain_steps.push_back(max_modulus(d0, d1));
            const long p = estimate_multiplicity(plain_steps);
            if (p > 1) {
                d0 *= p;
                d1 *= p;
                plain_steps.clear();
            }
        }
        x[0] -= d0;
        x[1] -= d1;

        Real scale = max_modulus(x[0], x[1]);
        if (scale < 1) scale = 1;
        out.last_step = max_modulus(d0, d1) / scale;
        out.step_trace.push_back(out.last_step);
    }
}

NewtonResult newton2(const ResidualFn& residual, const JacobianFn& jacobian, Point2 seed, const NewtonOptions& opts,
                     const PrecisionContext& ctx) {
    return newton2([&](const Point2& x) { return SystemValue{residual(x), jacobian(x)}; }, std::move(seed), opts, ctx);
}

}  // namespace stark::hp
