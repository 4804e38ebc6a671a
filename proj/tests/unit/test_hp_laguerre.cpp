#include "doctest.h"

#include "stark/hp/laguerre.hpp"

using namespace stark::hp;

namespace {

Real factorial(int k, const PrecisionContext& ctx) {
    Real f(1L, ctx);
    for (int i = 2; i <= k; ++i) f *= static_cast<long>(i);
    return f;
}

}  // namespace

TEST_CASE("order one and two rules match closed forms") {
    const PrecisionContext ctx(60);
    QuadratureRule one = laguerre_nodes(1, ctx);
    CHECK(one.nodes[0] == 1L);
    CHECK(abs(one.weights[0] - 1L) < pow10(-58, ctx));

    QuadratureRule two = laguerre_nodes(2, ctx);
    const Real s2 = sqrt(Real(2L, ctx));
    CHECK(abs(two.nodes[0] - (2L - s2)) < pow10(-58, ctx));
    CHECK(abs(two.nodes[1] - (s2 + 2L)) < pow10(-58, ctx));
    Real cubic(ctx);
    for (int k = 0; k < 2; ++k) cubic += two.weights[k] * pow(two.nodes[k], 3);
    CHECK(abs(cubic - 6L) < pow10(-57, ctx));
}

TEST_CASE("rule integrates x^k e^-x exactly for k <= 2M-1") {
    const PrecisionContext ctx(60);
    for (int order : {1, 3, 7, 20, 64, 512}) {
        QuadratureRule rule = laguerre_nodes(order, ctx);
        const Real tol = pow10(20.0 - ctx.digits(), ctx);
        Real wsum(ctx);
        for (const Real& w : rule.weights) {
            CHECK(w > 0L);
            wsum += w;
        }
        CHECK(abs(wsum - 1L) < tol);
        const int kmax = 2 * order - 1;
        const int stride = order > 64 ? 37 : 1;
        for (int k = 0; k <= kmax; k += (k + stride > kmax && k != kmax) ? kmax - k : stride) {
            Real sum(ctx);
            for (int i = 0; i < order; ++i) sum += rule.weights[i] * pow(rule.nodes[i], k);
            Real exact = factorial(k, ctx);
            CHECK_MESSAGE(abs(sum - exact) <= tol * exact, "order " << order << " k " << k);
        }
    }
}

TEST_CASE("zeros of L_M interlace zeros of L_{M+1}") {
    const PrecisionContext ctx(40);
    for (int order : {2, 5, 16, 33}) {
        QuadratureRule a = laguerre_nodes(order, ctx);
        QuadratureRule b = laguerre_nodes(order + 1, ctx);
        for (int i = 0; i < order; ++i) {
            CHECK(b.nodes[i] < a.nodes[i]);
            CHECK(a.nodes[i] < b.nodes[i + 1]);
        }
    }
}

TEST_CASE("nodes are ascending, positive and reproducible") {
    const PrecisionContext ctx(50);
    QuadratureRule a = laguerre_nodes(40, ctx);
    QuadratureRule b = laguerre_nodes(40, ctx);
    CHECK(a.nodes.front() > 0L);
    for (int i = 0; i < 40; ++i) {
        if (i) CHECK(a.nodes[i - 1] < a.nodes[i]);
        CHECK(a.nodes[i].to_sci(50) == b.nodes[i].to_sci(50));
        CHECK(a.weights[i].to_sci(50) == b.weights[i].to_sci(50));
    }
}

TEST_CASE("order outside [1, 512] is rejected") {
    const PrecisionContext ctx(30);
    CHECK_THROWS_AS(laguerre_nodes(0, ctx), std::invalid_argument);
    CHECK_THROWS_AS(laguerre_nodes(513, ctx), std::invalid_argument);
}
