#include "stark/crlm/solve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stark::crlm {

namespace {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CLdMatrix = Eigen::Matrix<cplx_ld, Eigen::Dynamic, Eigen::Dynamic>;
using CLdVector = Eigen::Matrix<cplx_ld, Eigen::Dynamic, 1>;

void check_angle(double theta) {
    if (!(theta >= 0.0 && theta < std::numbers::pi / 4)) {
        throw std::invalid_argument("rotation angle must lie in [0, pi/4), got " + std::to_string(theta));
    }
}

std::string format(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g%+.6gi", z.real(), z.imag());
    return buf;
}

}  // namespace

CLdMatrix rotated_operator(const SecularBlocks& blocks, double theta, double field) {
    const long double t = theta;
    const cplx_ld k_phase = std::polar(1.0L, -2.0L * t);
    const cplx_ld g_phase = std::polar(0.5L, -t);
    const cplx_ld w_phase = std::polar(static_cast<long double>(field), t);
    return k_phase * blocks.K.cast<cplx_ld>() - g_phase * blocks.G.cast<cplx_ld>() +
           w_phase * blocks.W.cast<cplx_ld>();
}

std::vector<cplx> rotate_and_solve(const SecularBlocks& blocks, double theta, double field) {
    check_angle(theta);
    if (field < 0.0) throw std::invalid_argument("field strength must be non-negative");
    const Eigen::Index n = blocks.dim();

    const Eigen::MatrixXd s = blocks.S.cast<double>();
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    const Eigen::VectorXd pivots = Eigen::MatrixXd(llt.matrixL()).diagonal();
    const double condition = std::pow(pivots.cwiseAbs().maxCoeff() / pivots.cwiseAbs().minCoeff(), 2);
    if (llt.info() != Eigen::Success) throw EigenSolveError("overlap matrix lost positive definiteness", condition);

    // C = L^{-1} A L^{-T} keeps the complex symmetry of A
    CMatrix c = rotated_operator(blocks, theta, field).cast<cplx>();
    const CMatrix l = Eigen::MatrixXd(llt.matrixL()).cast<cplx>();
    l.triangularView<Eigen::Lower>().solveInPlace(c);
    c.transposeInPlace();
    l.triangularView<Eigen::Lower>().solveInPlace(c);

    std::vector<cplx> w(static_cast<std::size_t>(n));
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n), reinterpret_cast<lapack_complex_double*>(c.data()),
                      static_cast<lapack_int>(n), reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                      nullptr, 1);
    if (info != 0) {
        throw EigenSolveError("complex eigen-solve failed (zgeev info " + std::to_string(info) + ")", condition);
    }
    std::sort(w.begin(), w.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return w;
}

std::vector<RotatedSpectrum> rotated_spectra(const SecularBlocks& blocks, double field,
                                             const std::vector<double>& thetas) {
    std::vector<RotatedSpectrum> out;
    for (double t : thetas) out.push_back({t, rotate_and_solve(blocks, t, field)});
    return out;
}

cplx_ld refine_eigenvalue(const SecularBlocks& blocks, double theta, double field, cplx guess, int iterations) {
    const CLdMatrix a = rotated_operator(blocks, theta, field);
    const CLdMatrix s = blocks.S.cast<cplx_ld>();
    const cplx_ld shift(guess.real(), guess.imag());
    const Eigen::PartialPivLU<CLdMatrix> lu(a - shift * s);

    CLdVector x = CLdVector::Ones(blocks.dim());
    for (int it = 0; it < iterations; ++it) {
        x = lu.solve(s * x);
        x /= x.norm();
    }
    const cplx_ld num = (x.transpose() * a * x)(0, 0);
    const cplx_ld den = (x.transpose() * s * x)(0, 0);
    return num / den;
}

ResonanceCandidate select_resonance(const std::vector<RotatedSpectrum>& spectra, cplx seed,
                                    const SecularBlocks& blocks, double field, const SelectOptions& opts) {
    if (spectra.size() < 2) throw std::invalid_argument("resonance selection needs at least two angles");

    std::vector<cplx> picks;
    for (const RotatedSpectrum& sp : spectra) {
        if (sp.eigenvalues.empty()) throw std::invalid_argument("empty spectrum");
        picks.push_back(*std::min_element(sp.eigenvalues.begin(), sp.eigenvalues.end(),
                                          [&](cplx a, cplx b) { return std::abs(a - seed) < std::abs(b - seed); }));
    }
    for (std::size_t i = 1; i < picks.size(); ++i) {
        if (std::abs(picks[i] - picks[i - 1]) > opts.jump_tolerance) {
            throw AmbiguityError("eigenvalue nearest " + format(seed) + " jumps from " + format(picks[i - 1]) +
                                     " at theta=" + std::to_string(spectra[i - 1].theta) + " to " +
                                     format(picks[i]) + " at theta=" + std::to_string(spectra[i].theta),
                                 {picks[i - 1], picks[i]});
        }
    }

    const std::size_t n = picks.size();
    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        rate[i] = std::abs(picks[hi] - picks[lo]) / (spectra[hi].theta - spectra[lo].theta);
    }
    const std::size_t best = static_cast<std::size_t>(std::min_element(rate.begin(), rate.end()) - rate.begin());

    ResonanceCandidate out;
    out.theta_used = spectra[best].theta;
    out.size_used = blocks.size;
    out.stability = rate[best];
    out.per_theta = picks;
    out.energy = cplx_ld(picks[best].real(), picks[best].imag());
    if (opts.refine) out.energy = refine_eigenvalue(blocks, out.theta_used, field, picks[best]);
    out.seed_distance = static_cast<double>(std::abs(out.energy - cplx_ld(seed.real(), seed.imag())));

    double spread = 0;
    for (cplx p : picks) spread = std::max(spread, std::abs(p.imag() - picks[best].imag()));
    out.below_resolution = std::abs(static_cast<double>(out.energy.imag())) < std::max(spread, 1e-13);
    return out;
}

}  // namespace stark::crlm
