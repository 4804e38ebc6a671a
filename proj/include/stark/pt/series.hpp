#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "stark/hp/real.hpp"
#include "stark/pt/state.hpp"

namespace stark::pt {

using hp::PrecisionContext;
using hp::Real;

/// Rayleigh-Schroedinger coefficients of E(F) = sum_k E_k F^k and of the two
/// separation constants A+(F), A-(F) for one Stark state.
struct PTSeries {
    StateLabel state;
    int order = 0;
    std::vector<Real> energy;   // E_0 .. E_order
    std::vector<Real> a_plus;   // xi-channel constant A
    std::vector<Real> a_minus;  // eta-channel constant 1 - A

    /// sum_{k<=upto} E_k F^k
    Real partial_sum(const Real& field, int upto) const;
};

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Perturbation series through order K <= 200. Needs ctx.digits >= K/2 + 30.
///
/// Each parabolic channel is solved as a Sturmian problem in a polynomial
/// basis, giving the channel charge Z(lambda) as a power series in the scaled
/// field lambda = F / (4 (-2E)^{3/2}); the energy follows from the closure
/// condition sqrt(-2E) [Z1(lambda) + Z2(-lambda)] = 1.
///
/// Throws PrecisionExhausted when the low-order coefficients miss their exact
/// rational values.
PTSeries pt_series(const StateLabel& state, int order, const PrecisionContext& ctx);

/// Sturmian charge series z_0 .. z_order of one channel with `nodes` radial
/// nodes and magnetic number |m|; z_0 = nodes + (|m| + 1) / 2.
std::vector<Real> channel_charge_series(int nodes, int abs_m, int order, const PrecisionContext& ctx);

struct TruncationReport {
    Real field;
    int k_opt = 0;
    Real partial_sum;
    Real error_estimate;
    /// False when the terms are still shrinking at the last available order.
    bool divergent_regime = true;
};

/// Smallest-term truncation of sum_k c_k F^k. Exactly vanishing coefficients
/// (odd orders of n1 = n2 states) are not terms and are skipped both when
/// locating the smallest term and when picking the first omitted one.
TruncationReport optimal_truncation(std::span<const Real> coeffs, const Real& field);
TruncationReport optimal_truncation(const PTSeries& series, const Real& field);

class FormulaDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Ground-state width Gamma = -2 Im E from the large-order asymptotic formula
/// Im E ~ -2/F exp(-2/(3F)) (1 - 8.916 F + 25.57 F^2). Valid for 0 < F <= 0.05.
Real asymptotic_width(const Real& field, const PrecisionContext& ctx);

}  // namespace stark::pt
