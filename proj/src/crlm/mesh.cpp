#include "stark/crlm/mesh.hpp"

#include <stdexcept>
#include <string>

namespace stark::crlm {

MeshBasis::MeshBasis(int size, int m, const PrecisionContext& ctx) : size_(size), m_(m), ctx_(ctx) {
    if (size < 2) throw std::invalid_argument("mesh needs N >= 2, got " + std::to_string(size));
    nodes_ = hp::laguerre_nodes(size, ctx).nodes;
    for (const Real& x : nodes_) sqrt_nodes_.push_back(sqrt(x));
}

MeshBasis::Value MeshBasis::lambda(int k, const Real& x) const {
    const Real& xk = nodes_.at(static_cast<std::size_t>(k));
    const hp::LaguerreValue l = hp::laguerre(size_, x.at(ctx_));
    Value out{Real(ctx_), Real(ctx_)};
    const Real d = x - xk;
    if (d.is_zero()) {
        // L_N(x) / (x - x_k) -> L_N'(x_k); its derivative -> L_N''(x_k) / 2,
        // and x L'' = (x - 1) L' - N L gives L''(x_k) = (x_k - 1) L'(x_k) / x_k
        out.value = l.derivative;
        out.derivative = l.derivative * (xk - 1L) / (xk * 2L);
    } else {
        out.value = l.value / d;
        out.derivative = (l.derivative - out.value) / d;
    }
    const Real scale = k % 2 ? -sqrt_nodes_[static_cast<std::size_t>(k)] : sqrt_nodes_[static_cast<std::size_t>(k)];
    out.value *= scale;
    out.derivative *= scale;
    return out;
}

Real MeshBasis::lagrange_defect() const {
    Real worst(ctx_);
    for (int k = 0; k < size_; ++k) {
        const Real diag = abs(lambda(k, nodes_[static_cast<std::size_t>(k)]).value);
        for (int l = 0; l < size_; ++l) {
            if (l == k) continue;
            const Real r = abs(lambda(k, nodes_[static_cast<std::size_t>(l)]).value) / diag;
            if (r > worst) worst = r;
        }
    }
    return worst;
}

}  // namespace stark::crlm
