#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stark/hp/complex.hpp"

namespace stark::hp {

using Point2 = std::array<Complex, 2>;
/// Row-major 2x2 Jacobian: {d r0/d x0, d r0/d x1, d r1/d x0, d r1/d x1}.
using Jacobian2 = std::array<Complex, 4>;

struct SystemValue {
    Point2 residual;
    Jacobian2 jacobian;
};

using SystemFn = std::function<SystemValue(const Point2&)>;
using ResidualFn = std::function<Point2(const Point2&)>;
using JacobianFn = std::function<Jacobian2(const Point2&)>;

struct NewtonOptions {
    /// Converged once max(|r0|, |r1|) <= residual_tol.
    double residual_tol_log10 = -20;
    /// Also converged once the relative Newton step falls to this floor;
    /// used when rounding keeps the residual from reaching residual_tol.
    std::optional<double> step_tol_log10;
    int max_iter = 60;
    /// Detect linear convergence toward a multiple root and scale the step
    /// by the estimated multiplicity.
    bool accelerate_multiple_roots = false;
    /// When set, a run whose best residual has not improved tenfold for
    /// stall_window iterations returns that best iterate, provided its
    /// residual is at most 10^stall_accept_log10. Rounding noise in a
    /// near-multiple root can hold the residual above residual_tol.
    std::optional<double> stall_accept_log10;
    int stall_window = 8;
};

struct NewtonResult {
    Point2 root;
    int iterations = 0;
    Real last_step;
    Real residual_norm;
    /// Relative step size of every iteration, for convergence diagnostics.
    std::vector<Real> step_trace;
    bool converged_on_residual = false;
    /// Returned through the stall rule rather than a tolerance.
    bool stalled = false;
};

class NewtonError : public std::runtime_error {
public:
    enum class Kind { singular_jacobian, max_iterations, non_finite };

    NewtonError(Kind kind, const std::string& what, Point2 last, Real residual_norm, std::optional<Real> condition)
        : std::runtime_error(what), kind_(kind), last_(std::move(last)), residual_norm_(std::move(residual_norm)),
          condition_(std::move(condition)) {}

    Kind kind() const { return kind_; }
    const Point2& last_iterate() const { return last_; }
    const Real& residual_norm() const { return residual_norm_; }
    /// Condition estimate of the Jacobian, when the failure was a singular Jacobian.
    const std::optional<Real>& condition() const { return condition_; }

private:
    Kind kind_;
    Point2 last_;
    Real residual_norm_;
    std::optional<Real> condition_;
};

/// Newton iteration for two complex equations in two complex unknowns.
NewtonResult newton2(const SystemFn& system, Point2 seed, const NewtonOptions& opts, const PrecisionContext& ctx);

NewtonResult newton2(const ResidualFn& residual, const JacobianFn& jacobian, Point2 seed, const NewtonOptions& opts,
                     const PrecisionContext& ctx);

}  // namespace stark::hp
