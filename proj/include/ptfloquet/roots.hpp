#pragma once

#include <functional>
#include <vector>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/propagator.hpp"
#include "ptfloquet/types.hpp"

namespace ptfloquet {

struct Rectangle {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;

    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
    bool contains(Complex z, double margin = 0.0) const {
        return z.real() >= re_min - margin && z.real() <= re_max + margin && z.imag() >= im_min - margin &&
               z.imag() <= im_max + margin;
    }
};

struct RootFinderSettings {
    double residual_tol = 1e-8;
    // Contour sampling: at least `min_edge_samples` segments per edge and
    // no segment longer than `max_sample_spacing`; a segment is bisected
    // while its phase increment exceeds pi/2, up to `max_bisections` times.
    int min_edge_samples = 16;
    double max_sample_spacing = 0.05;
    int max_bisections = 40;
    // A sample with |f| <= zero_guard * max|f| along the contour counts as
    // a zero on the contour.
    double zero_guard = 1e-9;
    int contour_retries = 3;
    int max_depth = 60;
    int newton_max_iter = 60;
    double fd_step = 1e-6;
    double merge_tol = 1e-7;
};

struct LocatedRoot {
    Complex z;
    double residual = 0.0;  // |f(z)|
    int multiplicity = 1;
    bool refined = false;   // Newton converged and residual <= residual_tol
};

struct ZeroSearch {
    Rectangle region;   // contour actually used (after any perturbation)
    int winding = 0;    // zero count of the outer contour
    int retries = 0;    // outer-contour perturbations performed
    std::vector<LocatedRoot> roots;
};

using AnalyticFunction = std::function<Complex(Complex)>;

/// Winding number of f along the counter-clockwise boundary of `rect`,
/// from phase continuation with adaptive refinement. Throws ContourFailure
/// when f vanishes on (or numerically at) the contour.
int winding_number(const AnalyticFunction& f, const Rectangle& rect, const RootFinderSettings& settings = {});

/// All zeros of an analytic f in `rect`: recursive winding-number
/// subdivision down to cells holding one zero, then Newton refinement with
/// a central-difference derivative.
ZeroSearch find_zeros(const AnalyticFunction& f, const Rectangle& rect, const RootFinderSettings& settings = {});

struct TtEigenvalues {
    double t = 0.0;
    Rectangle region;
    int winding = 0;
    int retries = 0;
    std::vector<LocatedRoot> roots;
};

/// Eigenvalues of the quasi-periodic problem y^(nu)(1) = e^{it} y^(nu)(0),
/// i.e. zeros of D_t(lambda) = det(X(1, lambda) - e^{it} I) in `rect`.
TtEigenvalues tt_eigenvalues(const PeriodicCoefficients& set, double t, const Rectangle& rect,
                             const IntegratorSettings& settings = {}, const RootFinderSettings& roots = {});

} // namespace ptfloquet
