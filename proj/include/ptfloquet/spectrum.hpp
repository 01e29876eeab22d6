#pragma once

#include <string>
#include <vector>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/propagator.hpp"
#include "ptfloquet/types.hpp"

namespace ptfloquet {

inline constexpr double kDefaultTolCircle = 1e-6;

/// Floquet multipliers at one spectral parameter: the eigenvalues of
/// X(1, lambda), sorted by (modulus, phase).
struct MultiplierSet {
    Complex lambda;
    std::vector<Complex> multipliers;
    std::vector<double> moduli;
};

/// Multipliers inside, on, and outside the band |mu| in [1 - tol, 1 + tol].
struct DimensionSplit {
    int inside = 0;
    int on = 0;
    int outside = 0;
    double tol_circle = kDefaultTolCircle;

    friend bool operator==(const DimensionSplit&, const DimensionSplit&) = default;
};

struct Membership {
    bool in_spectrum = false;
    double distance = 0.0;  // spectral_distance of the multipliers
};

struct ScanPoint {
    Complex lambda;
    double distance = 0.0;
    bool in_spectrum = false;
    std::string error;  // non-empty when this point failed numerically

    bool ok() const { return error.empty(); }
};

/// Row-major grid: `rows` values of Im(lambda), `cols` values of Re(lambda).
/// Real scans have a single row.
struct ScanResult {
    int rows = 0;
    int cols = 0;
    double tol_circle = kDefaultTolCircle;
    std::vector<ScanPoint> points;

    const ScanPoint& at(int row, int col) const { return points[static_cast<std::size_t>(row) * cols + col]; }
};

MultiplierSet multipliers_of(const Monodromy& monodromy);
MultiplierSet multipliers(const PeriodicCoefficients& set, Complex lambda, const IntegratorSettings& settings = {});

DimensionSplit dimension_split(const MultiplierSet& ms, double tol_circle = kDefaultTolCircle);

/// min_k max(|mu_k|, 1/|mu_k|) - 1. Zero exactly when a multiplier lies on
/// the unit circle, equal to |mu| - 1 for multipliers outside it, and
/// invariant under mu -> 1/conj(mu), so d(conj lambda) = d(lambda) for PT
/// coefficients.
double spectral_distance(const MultiplierSet& ms);

Membership in_spectrum(const PeriodicCoefficients& set, Complex lambda, double tol_circle = kDefaultTolCircle,
                       const IntegratorSettings& settings = {});

/// Principal arguments in [0, 2 pi) of the multipliers within tol of the unit circle.
std::vector<double> quasimomenta(const MultiplierSet& ms, double tol_circle = kDefaultTolCircle);

/// N evenly spaced points of [lambda_min, lambda_max], endpoints included.
ScanResult scan_real(const PeriodicCoefficients& set, double lambda_min, double lambda_max, int N,
                     double tol_circle = kDefaultTolCircle, const IntegratorSettings& settings = {});

/// Uniform grid over [re_min, re_max] x [im_min, im_max]; the grid is
/// placed symmetrically about the rectangle's centre, so a range symmetric
/// about the real axis produces exactly mirrored rows.
ScanResult scan_region(const PeriodicCoefficients& set, double re_min, double re_max, double im_min,
                       double im_max, int N_re, int N_im, double tol_circle = kDefaultTolCircle,
                       const IntegratorSettings& settings = {});

/// D_t(lambda) = det(X(1, lambda) - e^{it} I).
Complex char_det(const PeriodicCoefficients& set, Complex lambda, double t, const IntegratorSettings& settings = {});

} // namespace ptfloquet
