#pragma once

#include <functional>
#include <vector>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/types.hpp"

namespace ptfloquet {

struct IntegratorSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    long max_steps = 1'000'000;

    void validate() const;
    /// Both tolerances scaled by `factor` (e.g. 0.5 for a convergence check).
    IntegratorSettings scaled(double factor) const;
};

/// X(1, lambda) of X' = A(x, lambda) X with X(0) = I.
struct Monodromy {
    ComplexMatrix X1;
    Complex lambda;
    IntegratorSettings settings;
};

struct Trajectory {
    // Samples are monotone from x_a towards x_b (decreasing for backward runs).
    std::vector<double> x;
    std::vector<ComplexVector> states;
};

/// Right-hand side of a linear matrix ODE: writes M'(x) into `deriv`.
using MatrixRhs = std::function<void(double x, const ComplexMatrix& state, ComplexMatrix& deriv)>;

/// Dormand-Prince 5(4) with embedded error control on a complex matrix ODE.
/// Integrates from x_a to x_b in either direction. `step_hint`, when given,
/// supplies the initial step magnitude and receives the last accepted one.
ComplexMatrix integrate_ode(const MatrixRhs& rhs, ComplexMatrix state, double x_a, double x_b,
                            const IntegratorSettings& settings, double* step_hint = nullptr);

/// The companion system x' = A(x, lambda) x as a MatrixRhs.
MatrixRhs companion_rhs(const PeriodicCoefficients& set, Complex lambda);

Monodromy integrate_fundamental(const PeriodicCoefficients& set, Complex lambda,
                                const IntegratorSettings& settings = {});

ComplexMatrix integrate_interval(const PeriodicCoefficients& set, Complex lambda, double x_a, double x_b,
                                 const ComplexMatrix& M0, const IntegratorSettings& settings = {});

/// Block matrix (Y_j^(nu-1)(1) - e^{it} Y_j^(nu-1)(0)), row block nu, column
/// block j, built by integrating the order-n m x m matrix equation directly
/// for each canonical initial datum Y_j^(j-1)(0) = I. Shares the layout of
/// X(1) - e^{it} I but not its integration path.
ComplexMatrix canonical_boundary_matrix(const PeriodicCoefficients& set, Complex lambda, double t,
                                        const IntegratorSettings& settings = {});

/// Solution with state `init` at x_a sampled at N evenly spaced points through x_b.
Trajectory trajectory(const PeriodicCoefficients& set, Complex lambda, const ComplexVector& init, double x_a,
                      double x_b, int N, const IntegratorSettings& settings = {});

} // namespace ptfloquet
