#include "stark/hp/laguerre.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace stark::hp {

LaguerreValue laguerre(int n, const Real& x) {
    if (n < 1) throw std::invalid_argument("laguerre: degree must be >= 1");
    Real prev = x;  // L_0 = 1, set below at the precision of x
    prev = 1;
    Real cur = 1 - x;  // L_1
    for (int k = 1; k < n; ++k) {
        // (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}
        Real next = (2L * k + 1 - x) * cur;
        next -= prev * static_cast<long>(k);
        next /= static_cast<long>(k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    // x L_n' = n (L_n - L_{n-1})
    Real deriv = (cur - prev) * static_cast<long>(n) / x;
    return {std::move(cur), std::move(deriv), std::move(prev)};
}

QuadratureRule laguerre_nodes(int order, const PrecisionContext& ctx) {
    if (order < 1 || order > 512) {
        throw std::invalid_argument("Gauss-Laguerre order must be in [1, 512], got " + std::to_string(order));
    }
    // Jacobi matrix for e^{-x}: diagonal 2k+1, off-diagonal k+1.
    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 0; k < order; ++k) diag(k) = 2.0 * k + 1.0;
    for (int k = 0; k + 1 < order; ++k) sub(k) = k + 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw QuadratureError("tridiagonal eigen-solve failed for Laguerre seeds", -1);
    const Eigen::VectorXd& guess = eig.eigenvalues();

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.reserve(order);
    rule.weights.reserve(order);
    // once a Newton step is below sqrt(eps) the next one lands at full precision
    // refine with guard digits so the recurrence's rounding stays below the target
    const PrecisionContext work(ctx.digits() + 10);
    const Real converge = pow10(-0.5 * work.digits() - 2.0, work);
    const Real residual_bound = pow10(1.0 - ctx.digits(), work);

    for (int k = 0; k < order; ++k) {
        Real x(guess(k), work);
        bool done = false;
        for (int it = 0; it < 100 && !done; ++it) {
            LaguerreValue l = laguerre(order, x);
            Real step = l.value / l.derivative;
            x -= step;
            done = abs(step) <= converge * x;
        }
        if (done) {
            LaguerreValue l = laguerre(order, x);
            x -= l.value / l.derivative;
        }
        LaguerreValue l = laguerre(order, x);
        if (!done || !(abs(l.value) < residual_bound * abs(l.derivative * x))) {
            throw QuadratureError("Laguerre node " + std::to_string(k) + " of order " + std::to_string(order) +
                                      " did not converge",
                                  k);
        }
        if (!rule.nodes.empty() && !(rule.nodes.back() < x)) {
            throw QuadratureError("Laguerre node " + std::to_string(k) + " of order " + std::to_string(order) +
                                      " collapsed onto its neighbour",
                                  k);
        }
        // w_k = 1 / (x_k L_M'(x_k)^2)
        Real w = 1L / (x * l.derivative * l.derivative);
        rule.nodes.push_back(x.at(ctx));
        rule.weights.push_back(w.at(ctx));
    }
    return rule;
}

}  // namespace stark::hp
