#include "stark/crlm/blocks.hpp"

#include <stdexcept>
#include <string>

namespace stark::crlm {

namespace {

Real round_to_digits(const Real& x, int digits, const PrecisionContext& ctx) {
    if (x.is_zero()) return x;
    return Real(x.to_sci(digits), ctx);
}

}  // namespace

AxisTables axis_tables(const MeshBasis& mesh, const PrecisionContext& ctx, const AssemblyOptions& opts) {
    const int n = mesh.size();
    const int abs_m = mesh.abs_m();
    const int min_order = 2 * n + 2 * abs_m + 6;
    const int order = opts.quad_order == 0 ? min_order : opts.quad_order;
    if (order < min_order) {
        throw std::invalid_argument("quadrature order " + std::to_string(order) + " is below the exactness bound " +
                                    std::to_string(min_order) + " for N=" + std::to_string(n) +
                                    ", |m|=" + std::to_string(abs_m));
    }
    ctx.require(20, "CRLM assembly");

    const hp::QuadratureRule rule = hp::laguerre_nodes(order, ctx);
    const auto un = static_cast<std::size_t>(n);
    AxisTables t{hp::RealMatrix(un, un, Real(ctx)), hp::RealMatrix(un, un, Real(ctx)),
                 hp::RealMatrix(un, un, Real(ctx)), hp::RealMatrix(un, un, Real(ctx)),
                 hp::RealMatrix(un, un, Real(ctx))};

    std::vector<Real> val(un, Real(ctx)), grad(un, Real(ctx));
    for (int q = 0; q < order; ++q) {
        const Real& y = rule.nodes[static_cast<std::size_t>(q)];
        // e^{-y} y^{|m|} is the weight of every integrand
        const Real w = rule.weights[static_cast<std::size_t>(q)] * pow(y, static_cast<long>(abs_m));
        // chi' = e^{-y/2} y^{|m|/2} [Lambda' + (|m|/(2y) - 1/2) Lambda]
        const Real shift = Real(static_cast<long>(abs_m), ctx) / (y * 2L) - Real(1L, ctx) / 2L;
        for (int k = 0; k < n; ++k) {
            const MeshBasis::Value v = mesh.lambda(k, y);
            val[static_cast<std::size_t>(k)] = v.value;
            grad[static_cast<std::size_t>(k)] = v.derivative;
            fma_add(grad[static_cast<std::size_t>(k)], shift, v.value);
        }
        const Real wy = w * y;
        const Real wy2 = wy * y;
        const Real wy_inv = w / y;
        for (std::size_t k = 0; k < un; ++k) {
            for (std::size_t l = 0; l <= k; ++l) {
                const Real p = val[k] * val[l];
                fma_add(t.overlap(k, l), w, p);
                fma_add(t.moment1(k, l), wy, p);
                fma_add(t.moment2(k, l), wy2, p);
                if (abs_m > 0) fma_add(t.inverse(k, l), wy_inv, p);
                fma_add(t.kinetic(k, l), wy, grad[k] * grad[l]);
            }
        }
    }

    std::vector<Real> norm(un, Real(ctx));
    for (std::size_t k = 0; k < un; ++k) norm[k] = 1L / sqrt(t.overlap(k, k));
    for (hp::RealMatrix* mat : {&t.overlap, &t.moment1, &t.moment2, &t.inverse, &t.kinetic}) {
        for (std::size_t k = 0; k < un; ++k) {
            for (std::size_t l = 0; l <= k; ++l) {
                Real& e = (*mat)(k, l);
                e *= norm[k];
                e *= norm[l];
                (*mat)(l, k) = e;
            }
        }
    }
    return t;
}

SecularBlocks assemble_blocks(int size, int m, const PrecisionContext& ctx, const AssemblyOptions& opts) {
    const MeshBasis mesh(size, m, ctx);
    const AxisTables t = axis_tables(mesh, ctx, opts);
    const int dim = size * size;
    SecularBlocks b{size, m, ctx.digits(), LdMatrix(dim, dim), LdMatrix(dim, dim), LdMatrix(dim, dim),
                    LdMatrix(dim, dim)};
    const Real m2_8 = Real(static_cast<long>(m) * m, ctx) / 8L;
    const auto un = static_cast<std::size_t>(size);

    Real k_acc(ctx), g_acc(ctx), w_acc(ctx), s_acc(ctx), tmp(ctx);
    for (std::size_t a = 0; a < un; ++a)
        for (std::size_t c = 0; c <= a; ++c)
            for (std::size_t bb = 0; bb < un; ++bb)
                for (std::size_t d = 0; d < un; ++d) {
                    const std::size_t i = a * un + bb, j = c * un + d;
                    const Real& oxi = t.overlap(a, c);
                    const Real& oeta = t.overlap(bb, d);
                    k_acc = t.kinetic(a, c) * oeta;
                    fma_add(k_acc, oxi, t.kinetic(bb, d));
                    k_acc /= 2L;
                    if (m != 0) {
                        tmp = t.inverse(a, c) * oeta;
                        fma_add(tmp, oxi, t.inverse(bb, d));
                        fma_add(k_acc, m2_8, tmp);
                    }
                    g_acc = oxi * oeta;
                    w_acc = t.moment2(a, c) * oeta;
                    fma_sub(w_acc, oxi, t.moment2(bb, d));
                    w_acc /= 8L;
                    s_acc = t.moment1(a, c) * oeta;
                    fma_add(s_acc, oxi, t.moment1(bb, d));
                    s_acc /= 4L;
                    if (opts.integral_digits) {
                        for (Real* r : {&k_acc, &g_acc, &w_acc, &s_acc})
                            *r = round_to_digits(*r, *opts.integral_digits, ctx);
                    }
                    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
                    b.K(ii, jj) = b.K(jj, ii) = k_acc.to_long_double();
                    b.G(ii, jj) = b.G(jj, ii) = g_acc.to_long_double();
                    b.W(ii, jj) = b.W(jj, ii) = w_acc.to_long_double();
                    b.S(ii, jj) = b.S(jj, ii) = s_acc.to_long_double();
                }

    Eigen::LLT<LdMatrix> llt(b.S);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("CRLM overlap matrix is not positive definite (N=" + std::to_string(size) +
                                 ", m=" + std::to_string(m) + ")");
    }
    return b;
}

}  // namespace stark::crlm
