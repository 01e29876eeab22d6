#include "ptfloquet/companion.hpp"

namespace ptfloquet {

void assemble_companion(const std::vector<ComplexMatrix>& P, Complex lambda, ComplexMatrix& A) {
    const int n = static_cast<int>(P.size());
    const int m = static_cast<int>(P.front().rows());
    const int d = n * m;
    A.setZero(d, d);
    for (int blk = 0; blk + 1 < n; ++blk) {
        A.block(blk * m, (blk + 1) * m, m, m).setIdentity();
    }
    // y^(n) = i^-n (lambda - P_n) y - sum_{k<n} i^-k P_k y^(n-k)
    const int last = (n - 1) * m;
    for (int k = 1; k < n; ++k) {
        A.block(last, (n - k) * m, m, m) = -ipow(-k) * P[k - 1];
    }
    auto lead = A.block(last, 0, m, m);
    lead = -ipow(-n) * P[n - 1];
    lead.diagonal().array() += ipow(-n) * lambda;
}

CompanionMatrix assemble_companion(const PeriodicCoefficients& set, Complex lambda, double x) {
    std::vector<ComplexMatrix> P;
    set.evaluate(x, P);
    CompanionMatrix out{ComplexMatrix{}, lambda, x};
    assemble_companion(P, lambda, out.A);
    return out;
}

Complex companion_trace_integral(const PeriodicCoefficients& set, Complex lambda) {
    const int n = set.order();
    const int m = set.dim();
    Complex trace_p1 = 0.0;
    for (int i = 0; i < m; ++i) trace_p1 += set.mean(1, i, i);
    // Only the last diagonal block is nonzero; it is i P_1 for n >= 2 and
    // -i (lambda - P_1) for n = 1.
    if (n == 1) return -kI * lambda * static_cast<double>(m) + kI * trace_p1;
    return kI * trace_p1;
}

} // namespace ptfloquet
