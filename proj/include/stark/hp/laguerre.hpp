#pragma once

#include <stdexcept>
#include <vector>

#include "stark/hp/real.hpp"

namespace stark::hp {

/// Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
struct QuadratureRule {
    int order = 0;
    std::vector<Real> nodes;    // ascending zeros of L_order
    std::vector<Real> weights;  // all positive, sum to 1
};

struct LaguerreValue {
    Real value;       // L_n(x)
    Real derivative;  // L_n'(x)
    Real previous;    // L_{n-1}(x)
};

/// L_n(x) and L_n'(x) by the three-term recurrence, n >= 1.
LaguerreValue laguerre(int n, const Real& x);

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

/// Nodes and weights of the M-point Gauss-Laguerre rule, 1 <= M <= 512.
///
/// Double-precision nodes from the symmetric tridiagonal Jacobi matrix seed a
/// Newton refinement on L_M at the working precision. Throws QuadratureError
/// naming the node index if a node fails to converge or loses its ordering.
QuadratureRule laguerre_nodes(int order, const PrecisionContext& ctx);

}  // namespace stark::hp
