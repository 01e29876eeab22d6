#pragma once

#include <vector>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/types.hpp"

namespace ptfloquet {

// First-order form x' = A(x, lambda) x of the order-n equation, with the
// state stacked as (y, y', ..., y^(n-1)), each block of size m.
struct CompanionMatrix {
    ComplexMatrix A;
    Complex lambda;
    double x = 0.0;
};

CompanionMatrix assemble_companion(const PeriodicCoefficients& set, Complex lambda, double x);

// Same layout from already-evaluated P_1(x)..P_n(x); writes into `A`
// (resized to mn x mn).
void assemble_companion(const std::vector<ComplexMatrix>& P, Complex lambda, ComplexMatrix& A);

// Exact integral over [0,1] of tr A(x, lambda).
Complex companion_trace_integral(const PeriodicCoefficients& set, Complex lambda);

} // namespace ptfloquet
