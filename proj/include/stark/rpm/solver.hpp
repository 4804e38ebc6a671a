#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stark/pt/state.hpp"
#include "stark/rpm/hankel.hpp"

namespace stark::rpm {

/// Working digits needed to resolve a resonance at field F:
/// max(60, ceil(2 (2/(3F)) / ln 10) + 40). The width scales like e^{-2/(3F)}
/// and splitting the determinant roots costs about twice that many digits.
int precision_rule(double field);

struct Seed {
    Complex energy;
    Complex constant;
};

/// Re E from optimally truncated perturbation theory; Im E from the ground
/// state asymptotic width (when the formula applies) or -1e-8 otherwise;
/// A from the optimally truncated A_+ series ((n1 + (|m| + 1)/2) / n at F = 0).
Seed seed_from_perturbation(const pt::StateLabel& state, const Real& field, const PrecisionContext& ctx);

struct SolveOptions {
    /// Reject contexts below precision_rule(F). Switch off only when the
    /// width is irrelevant (e.g. fitting Re E at tiny fields).
    bool enforce_precision_rule = true;
    /// Newton stops once the equilibrated determinants (or the relative step)
    /// reach 10^-(digits - guard_digits).
    int guard_digits = 15;
    int max_iter = 200;
    /// Relative distance from the seed beyond which a root is flagged spurious.
    double jump_threshold = 1e-3;
};

struct ResonanceEstimate {
    Complex energy;
    Complex constant;  // A; the eta channel uses 1 - A
    Real gamma;        // -2 Im E
    int dim = 0;
    int shift = 0;
    /// log10 of the last relative change of Re E (set by converge_scan).
    std::optional<double> conv_log10;
    int iterations = 0;
    /// max over channels of the equilibrated determinant at the root.
    Real residual;
    /// Root landed farther than jump_threshold from its seed.
    bool spurious = false;
};

class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, Complex energy, Complex constant, Real residual, int dim)
        : std::runtime_error(what), energy_(std::move(energy)), constant_(std::move(constant)),
          residual_(std::move(residual)), dim_(dim) {}

    const Complex& last_energy() const { return energy_; }
    const Complex& last_constant() const { return constant_; }
    /// Largest equilibrated determinant magnitude at the last iterate.
    const Real& residual() const { return residual_; }
    /// Determinant dimension D at which the failure happened.
    int dim() const { return dim_; }

private:
    Complex energy_;
    Complex constant_;
    Real residual_;
    int dim_;
};

/// Both channel determinants as Newton residuals, with their Jacobian.
struct ChannelPair {
    HankelValue xi;
    HankelValue eta;
};
ChannelPair evaluate_channels(const Complex& energy, const Complex& constant, const Real& field, int m,
                              const HankelSpec& spec, const PrecisionContext& ctx);

/// Simultaneous root of H_D^d for the xi channel (sigma = +1, A) and the eta
/// channel (sigma = -1, 1 - A), by Newton from `seed`.
ResonanceEstimate solve_resonance(const Real& field, int m, const Seed& seed, const HankelSpec& spec,
                                  const PrecisionContext& ctx, const SolveOptions& opts = {});

struct TraceRow {
    int dim = 0;
    Complex energy;
    Complex constant;
    /// log10 |(a[D] - a[D-1]) / a[D]| for a = Re E and Im E; empty on the first
    /// row or when a[D] = 0. Changes below the working precision are reported
    /// at the precision floor -digits.
    std::optional<Real> log10_rel_re;
    std::optional<Real> log10_rel_im;
};

struct ConvergenceTrace {
    std::vector<TraceRow> rows;
    ResonanceEstimate final;
    /// Dimensions at which tracking jumped and the solve was reseeded.
    std::vector<int> reseeded_at;
    /// Dimensions where neither tracking nor reseeding gave an acceptable
    /// root; they have no row and the next dimension tracks from the last row.
    std::vector<int> skipped_at;
};

/// Solves for D = dim_from .. dim_to at fixed d, seeding each D with the
/// previous root and falling back to `seed` when the tracked root jumps.
/// Throws SolveError only when no dimension in the range yields a root.
ConvergenceTrace converge_scan(const Real& field, int m, const Seed& seed, int dim_from, int dim_to, int shift,
                               const PrecisionContext& ctx, const SolveOptions& opts = {});

}  // namespace stark::rpm
