#pragma once

#include <vector>

#include "stark/hp/laguerre.hpp"

namespace stark::crlm {

using hp::PrecisionContext;
using hp::Real;

/// One-dimensional Laguerre-mesh functions
///   chi_k(x) = e^{-x/2} x^{|m|/2} Lambda_k(x),
///   Lambda_k(x) = (-1)^k sqrt(x_k) L_N(x) / (x - x_k),
/// with x_k the zeros of L_N. Lambda_k vanishes at every mesh point but x_k.
class MeshBasis {
public:
    MeshBasis(int size, int m, const PrecisionContext& ctx);

    int size() const { return size_; }
    int m() const { return m_; }
    int abs_m() const { return m_ < 0 ? -m_ : m_; }
    const std::vector<Real>& nodes() const { return nodes_; }

    /// Lambda_k(x) and Lambda_k'(x); x may coincide with a mesh point.
    struct Value {
        Real value;
        Real derivative;
    };
    Value lambda(int k, const Real& x) const;

    /// max_{k != l} |Lambda_k(x_l)| / |Lambda_k(x_k)|.
    Real lagrange_defect() const;

private:
    int size_;
    int m_;
    PrecisionContext ctx_;
    std::vector<Real> nodes_;
    std::vector<Real> sqrt_nodes_;
};

}  // namespace stark::crlm
