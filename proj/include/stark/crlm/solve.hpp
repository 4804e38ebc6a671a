#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "stark/crlm/blocks.hpp"

namespace stark::crlm {

using cplx = std::complex<double>;
using cplx_ld = std::complex<long double>;

/// Angles scanned when selecting a resonance.
inline const std::vector<double> kDefaultThetaScan{0.2, 0.25, 0.3, 0.35, 0.4};

/// Complex-scaled pencil e^{-2i theta} K - 1/2 e^{-i theta} G + F e^{i theta} W.
Eigen::Matrix<cplx_ld, Eigen::Dynamic, Eigen::Dynamic> rotated_operator(const SecularBlocks& blocks, double theta,
                                                                         double field);

class EigenSolveError : public std::runtime_error {
public:
    EigenSolveError(const std::string& what, double condition) : std::runtime_error(what), condition_(condition) {}
    /// Ratio of the extreme Cholesky pivots of S, squared.
    double condition() const { return condition_; }

private:
    double condition_;
};

/// All N^2 eigenvalues of the rotated generalized problem, in double
/// precision, sorted by (Re, Im). 0 <= theta < pi/4, F >= 0.
std::vector<cplx> rotate_and_solve(const SecularBlocks& blocks, double theta, double field);

struct RotatedSpectrum {
    double theta = 0;
    std::vector<cplx> eigenvalues;
};

std::vector<RotatedSpectrum> rotated_spectra(const SecularBlocks& blocks, double field,
                                             const std::vector<double>& thetas = kDefaultThetaScan);

struct ResonanceCandidate {
    cplx_ld energy;
    double theta_used = 0;
    int size_used = 0;
    /// |dE/dtheta| by finite differences over the scan at theta_used.
    double stability = 0;
    double seed_distance = 0;
    /// |Im E| is under the spread of Im E over the scan (or 1e-13): the width
    /// is not resolved by the method.
    bool below_resolution = false;
    /// Nearest eigenvalue to the seed at every scanned angle.
    std::vector<cplx> per_theta;

    double gamma() const { return static_cast<double>(-2.0L * energy.imag()); }
};

class AmbiguityError : public std::runtime_error {
public:
    AmbiguityError(const std::string& what, std::vector<cplx> contenders)
        : std::runtime_error(what), contenders_(std::move(contenders)) {}
    const std::vector<cplx>& contenders() const { return contenders_; }

private:
    std::vector<cplx> contenders_;
};

struct SelectOptions {
    /// Largest allowed jump of the tracked eigenvalue between adjacent angles.
    double jump_tolerance = 1e-2;
    /// Polish the chosen eigenvalue by inverse iteration on the long double pencil.
    bool refine = true;
};

/// Picks, at every angle, the eigenvalue nearest `seed`, and returns the one
/// at the angle where it moves least with theta.
ResonanceCandidate select_resonance(const std::vector<RotatedSpectrum>& spectra, cplx seed,
                                    const SecularBlocks& blocks, double field, const SelectOptions& opts = {});

/// Inverse iteration on (A(theta) - E S) from `guess`, followed by the
/// unconjugated Rayleigh quotient x^T A x / x^T S x, all in long double.
cplx_ld refine_eigenvalue(const SecularBlocks& blocks, double theta, double field, cplx guess, int iterations = 3);

}  // namespace stark::crlm
