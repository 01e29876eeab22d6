#include "ptfloquet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptfloquet/eigensolve.hpp"
#include "ptfloquet/errors.hpp"

namespace ptfloquet {

namespace {

void check_tol_circle(double tol_circle) {
    if (!(tol_circle > 0.0)) throw ParameterError("tol_circle must be positive");
}

// k-th of N points spread symmetrically about the midpoint of [lo, hi].
double grid_point(double lo, double hi, int k, int N) {
    const double centre = 0.5 * (lo + hi);
    const double step = (hi - lo) / (N - 1);
    return centre + (k - 0.5 * (N - 1)) * step;
}

ScanPoint evaluate_point(const PeriodicCoefficients& set, Complex lambda, double tol_circle,
                         const IntegratorSettings& settings) {
    ScanPoint point;
    point.lambda = lambda;
    try {
        const auto membership = in_spectrum(set, lambda, tol_circle, settings);
        point.distance = membership.distance;
        point.in_spectrum = membership.in_spectrum;
    } catch (const NumericalError& e) {
        point.distance = std::numeric_limits<double>::quiet_NaN();
        point.error = e.what();
    }
    return point;
}

} // namespace

MultiplierSet multipliers_of(const Monodromy& monodromy) {
    MultiplierSet ms;
    ms.lambda = monodromy.lambda;
    ms.multipliers = eigenvalues(monodromy.X1);
    sort_by_modulus_phase(ms.multipliers);
    ms.moduli.reserve(ms.multipliers.size());
    for (const auto& mu : ms.multipliers) ms.moduli.push_back(std::abs(mu));
    return ms;
}

MultiplierSet multipliers(const PeriodicCoefficients& set, Complex lambda, const IntegratorSettings& settings) {
    return multipliers_of(integrate_fundamental(set, lambda, settings));
}

DimensionSplit dimension_split(const MultiplierSet& ms, double tol_circle) {
    check_tol_circle(tol_circle);
    DimensionSplit split;
    split.tol_circle = tol_circle;
    for (double r : ms.moduli) {
        if (r < 1.0 - tol_circle) {
            ++split.inside;
        } else if (r > 1.0 + tol_circle) {
            ++split.outside;
        } else {
            ++split.on;
        }
    }
    return split;
}

double spectral_distance(const MultiplierSet& ms) {
    double best = std::numeric_limits<double>::infinity();
    for (double r : ms.moduli) best = std::min(best, std::max(r, 1.0 / r) - 1.0);
    return best;
}

Membership in_spectrum(const PeriodicCoefficients& set, Complex lambda, double tol_circle,
                       const IntegratorSettings& settings) {
    check_tol_circle(tol_circle);
    const double distance = spectral_distance(multipliers(set, lambda, settings));
    return {distance <= tol_circle, distance};
}

std::vector<double> quasimomenta(const MultiplierSet& ms, double tol_circle) {
    std::vector<double> out;
    for (std::size_t q = 0; q < ms.multipliers.size(); ++q) {
        if (std::abs(ms.moduli[q] - 1.0) > tol_circle) continue;
        double t = std::arg(ms.multipliers[q]);
        if (t < 0.0) t += kTwoPi;
        if (t >= kTwoPi) t = 0.0;
        out.push_back(t);
    }
    return out;
}

ScanResult scan_real(const PeriodicCoefficients& set, double lambda_min, double lambda_max, int N,
                     double tol_circle, const IntegratorSettings& settings) {
    check_tol_circle(tol_circle);
    if (!(lambda_min < lambda_max)) throw ParameterError("scan range needs lambda_min < lambda_max");
    if (N < 2) throw ParameterError("scan grid needs at least 2 points");
    ScanResult result;
    result.rows = 1;
    result.cols = N;
    result.tol_circle = tol_circle;
    result.points.reserve(N);
    for (int k = 0; k < N; ++k) {
        const double lambda =
            k == 0 ? lambda_min : k + 1 == N ? lambda_max : lambda_min + (lambda_max - lambda_min) * k / (N - 1);
        result.points.push_back(evaluate_point(set, lambda, tol_circle, settings));
    }
    return result;
}

ScanResult scan_region(const PeriodicCoefficients& set, double re_min, double re_max, double im_min,
                       double im_max, int N_re, int N_im, double tol_circle, const IntegratorSettings& settings) {
    check_tol_circle(tol_circle);
    if (!(re_min < re_max) || !(im_min < im_max)) throw ParameterError("scan region must be a nondegenerate rectangle");
    if (N_re < 2 || N_im < 2) throw ParameterError("scan grid needs at least 2 points per axis");
    ScanResult result;
    result.rows = N_im;
    result.cols = N_re;
    result.tol_circle = tol_circle;
    result.points.reserve(static_cast<std::size_t>(N_re) * N_im);
    for (int r = 0; r < N_im; ++r) {
        const double im = grid_point(im_min, im_max, r, N_im);
        for (int c = 0; c < N_re; ++c) {
            const double re = grid_point(re_min, re_max, c, N_re);
            result.points.push_back(evaluate_point(set, Complex(re, im), tol_circle, settings));
        }
    }
    return result;
}

Complex char_det(const PeriodicCoefficients& set, Complex lambda, double t, const IntegratorSettings& settings) {
    ComplexMatrix shifted = integrate_fundamental(set, lambda, settings).X1;
    shifted.diagonal().array() -= std::polar(1.0, t);
    return determinant(shifted);
}

} // namespace ptfloquet
