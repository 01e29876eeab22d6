#include <doctest.h>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/companion.hpp"

using namespace ptfloquet;

namespace {

// Entry-by-entry construction from the rewritten equation
// y^(n) = i^-n lambda y - sum_{k=1..n} i^-k P_k y^(n-k).
ComplexMatrix dense_companion(const PeriodicCoefficients& set, Complex lambda, double x) {
    const int n = set.order();
    const int m = set.dim();
    std::vector<ComplexMatrix> P;
    set.evaluate(x, P);
    ComplexMatrix A = ComplexMatrix::Zero(n * m, n * m);
    for (int row = 0; row < n * m; ++row) {
        const int blk = row / m;
        const int r = row % m;
        if (blk < n - 1) {
            A(row, row + m) = 1.0;
            continue;
        }
        const Complex inv_in = std::pow(Complex(0, 1), -n);
        A(row, r) += inv_in * lambda;
        for (int k = 1; k <= n; ++k) {
            const Complex inv_ik = std::pow(Complex(0, 1), -k);
            for (int c = 0; c < m; ++c) A(row, (n - k) * m + c) -= inv_ik * P[k - 1](r, c);
        }
    }
    return A;
}

} // namespace

TEST_CASE("i^p is exact") {
    CHECK(ipow(0) == Complex(1, 0));
    CHECK(ipow(1) == Complex(0, 1));
    CHECK(ipow(-1) == Complex(0, -1));
    CHECK(ipow(-2) == Complex(-1, 0));
    CHECK(ipow(-3) == Complex(0, 1));
    CHECK(ipow(7) == Complex(0, -1));
}

TEST_CASE("companion matrices of the zero potential") {
    const Complex lambda(0.8, -0.3);
    SUBCASE("n=1") {
        const auto A = assemble_companion(CoefficientSet(1, 1), lambda, 0.2).A;
        CHECK(std::abs(A(0, 0) - (-kI * lambda)) < 1e-15);
    }
    SUBCASE("n=2") {
        const auto A = assemble_companion(CoefficientSet(2, 1), lambda, 0.2).A;
        CHECK(A(0, 0) == Complex(0));
        CHECK(A(0, 1) == Complex(1));
        CHECK(A(1, 0) == -lambda);
        CHECK(A(1, 1) == Complex(0));
    }
    SUBCASE("n=3: bottom-left block is i lambda and y = exp(i w x) with w^3 = -lambda") {
        const auto A = assemble_companion(CoefficientSet(3, 1), lambda, 0.2).A;
        CHECK(std::abs(A(2, 0) - kI * lambda) < 1e-15);
        CHECK(A(0, 1) == Complex(1));
        CHECK(A(1, 2) == Complex(1));
        CHECK(A(2, 1) == Complex(0));
        CHECK(A(2, 2) == Complex(0));
        // each cube root w of -lambda gives the eigenvector (1, iw, (iw)^2)
        for (int r = 0; r < 3; ++r) {
            const Complex w = std::polar(std::cbrt(std::abs(lambda)), (std::arg(-lambda) + kTwoPi * r) / 3.0);
            ComplexVector v(3);
            v << 1.0, kI * w, (kI * w) * (kI * w);
            CHECK((A * v - kI * w * v).norm() < 1e-13);
        }
    }
}

TEST_CASE("assembled companion matches an independent dense construction") {
    for (auto [n, m] : {std::pair{1, 1}, {2, 2}, {3, 1}, {3, 3}, {4, 2}}) {
        const auto set = random_pt_set(n, m, 2, 1.0, 17 + n * 10 + m);
        for (double x : {-0.41, 0.0, 0.13, 0.77}) {
            const Complex lambda(1.7, -0.6);
            CHECK((assemble_companion(set, lambda, x).A - dense_companion(set, lambda, x)).norm() <= 1e-14);
        }
    }
}

TEST_CASE("companion matrix is 1-periodic") {
    const auto set = random_pt_set(3, 2, 3, 1.0, 3);
    for (double x : {-0.9, -0.2, 0.35, 0.5}) {
        const auto A0 = assemble_companion(set, 2.0, x).A;
        const auto A1 = assemble_companion(set, 2.0, x + 1.0).A;
        CHECK((A1 - A0).norm() <= 1e-12);
    }
}

TEST_CASE("trace integral") {
    SUBCASE("n=3, m=1, P_1 mean 5") {
        CoefficientSet set(3, 1, {{FourierEntry({5.0, 0.3}, {0.2})}, {FourierEntry{}}, {FourierEntry{}}});
        CHECK(std::abs(companion_trace_integral(set, 1.2) - Complex(0, 5)) < 1e-15);
    }
    SUBCASE("n=1 zero potential") {
        CHECK(std::abs(companion_trace_integral(CoefficientSet(1, 1), kPi) - Complex(0, -kPi)) < 1e-15);
    }
    SUBCASE("n >= 2 with P_1 = 0") {
        auto set = random_pt_set(2, 2, 2, 1.0, 9);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) set.entry(1, i, j) = FourierEntry{};
        CHECK(companion_trace_integral(set, Complex(3, 4)) == Complex(0));
    }
    SUBCASE("agrees with trapezoid quadrature of tr A") {
        const auto set = random_pt_set(1, 3, 3, 1.0, 21);
        const Complex lambda(0.4, 0.9);
        const int N = 64;
        Complex sum = 0.0;
        for (int s = 0; s < N; ++s) sum += assemble_companion(set, lambda, double(s) / N).A.trace();
        CHECK(std::abs(sum / double(N) - companion_trace_integral(set, lambda)) < 1e-13);
    }
}
