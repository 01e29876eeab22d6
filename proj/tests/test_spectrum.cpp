#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "ptfloquet/companion.hpp"
#include "ptfloquet/eigensolve.hpp"
#include "ptfloquet/errors.hpp"
#include "ptfloquet/spectrum.hpp"

using namespace ptfloquet;

namespace {

// Multipliers exp(i w) of the free cubic operator: w^3 = -lambda.
std::vector<Complex> free_cubic_multipliers(Complex lambda) {
    std::vector<Complex> out;
    for (int r = 0; r < 3; ++r) {
        const Complex w = std::polar(std::cbrt(std::abs(lambda)), (std::arg(-lambda) + kTwoPi * r) / 3.0);
        out.push_back(std::exp(kI * w));
    }
    return out;
}

} // namespace

TEST_CASE("multipliers against closed forms") {
    SUBCASE("n=1 zero potential, lambda=pi") {
        const auto ms = multipliers(CoefficientSet(1, 1), kPi);
        REQUIRE(ms.multipliers.size() == 1);
        CHECK(std::abs(ms.multipliers[0] - Complex(-1.0)) < 1e-8);
    }
    SUBCASE("n=3 zero potential, lambda=1") {
        const auto ms = multipliers(CoefficientSet(3, 1), 1.0);
        CHECK(multiset_distance(ms.multipliers, free_cubic_multipliers(1.0)) < 1e-8);
        CHECK(ms.moduli[0] == doctest::Approx(std::exp(-std::sqrt(3.0) / 2)).epsilon(1e-8));
        CHECK(ms.moduli[1] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(ms.moduli[2] == doctest::Approx(std::exp(std::sqrt(3.0) / 2)).epsilon(1e-8));
        CHECK(ms.moduli[0] == doctest::Approx(0.4206).epsilon(1e-4));
        CHECK(ms.moduli[2] == doctest::Approx(2.3774).epsilon(1e-4));
    }
    SUBCASE("constant coefficients: monodromy is the matrix exponential") {
        for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {3, 1}, {2, 3}}) {
            const auto set = random_pt_set(n, m, 0, 1.0, 40 + n * m);
            const Complex lambda(0.7, -0.4);
            const ComplexMatrix A = assemble_companion(set, lambda, 0.0).A;
            const ComplexMatrix expA = A.exp();
            const auto X = integrate_fundamental(set, lambda).X1;
            CHECK((X - expA).norm() / expA.norm() < 1e-8);
            CHECK(multiset_distance(multipliers(set, lambda).multipliers, eigenvalues(expA)) < 1e-7);
        }
    }
}

TEST_CASE("multiplier set invariants") {
    for (auto [n, m] : {std::pair{1, 3}, {2, 2}, {3, 3}}) {
        const auto set = random_pt_set(n, m, 2, 0.7, 5 * n + m);
        for (const Complex lambda : {Complex(1.2), Complex(-4.0, 0.6)}) {
            const auto monodromy = integrate_fundamental(set, lambda);
            const auto ms = multipliers_of(monodromy);
            CHECK(ms.multipliers.size() == static_cast<std::size_t>(n * m));
            double product = 1.0;
            for (double r : ms.moduli) {
                CHECK(r > 0.0);
                product *= r;
            }
            const double det = std::abs(determinant(monodromy.X1));
            CHECK(std::abs(product - det) <= 1e-8 * det);
        }
    }
}

TEST_CASE("dimension_split") {
    MultiplierSet ms;
    ms.moduli = {1.0, 0.4204, 2.3774};
    CHECK(dimension_split(ms, 1e-6) == DimensionSplit{1, 1, 1, 1e-6});
    ms.moduli = {1.0, 1.0};
    CHECK(dimension_split(ms, 1e-6) == DimensionSplit{0, 2, 0, 1e-6});
    ms.moduli = {2.0};
    CHECK(dimension_split(ms, 1e-6) == DimensionSplit{0, 0, 1, 1e-6});
    CHECK_THROWS_AS(dimension_split(ms, 0.0), ParameterError);
}

TEST_CASE("spectral distance is symmetric under reflection in the circle") {
    MultiplierSet ms;
    ms.moduli = {2.0};
    CHECK(spectral_distance(ms) == 1.0);
    ms.moduli = {0.5};
    CHECK(spectral_distance(ms) == 1.0);
    ms.moduli = {0.25, 1.0 + 1e-7, 3.0};
    CHECK(spectral_distance(ms) == doctest::Approx(1e-7).epsilon(1e-6));
}

TEST_CASE("in_spectrum") {
    const CoefficientSet free1(1, 1);
    const auto real = in_spectrum(free1, 0.7);
    CHECK(real.in_spectrum);
    CHECK(real.distance < 1e-9);
    const auto off = in_spectrum(free1, kI);
    CHECK_FALSE(off.in_spectrum);
    CHECK(off.distance == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-8));
    CHECK(in_spectrum(CoefficientSet(3, 1), 1.0).in_spectrum);
}

TEST_CASE("quasimomenta") {
    const CoefficientSet free1(1, 1);
    const auto q = quasimomenta(multipliers(free1, 0.7));
    REQUIRE(q.size() == 1);
    CHECK(q[0] == doctest::Approx(kTwoPi - 0.7).epsilon(1e-9));
    const auto q0 = quasimomenta(multipliers(free1, 0.0));
    REQUIRE(q0.size() == 1);
    CHECK(q0[0] == 0.0);
    CHECK(quasimomenta(multipliers(free1, kI)).empty());
}

TEST_CASE("odd n*m: some multiplier sits on the circle at every real lambda") {
    for (auto [n, m] : {std::pair{1, 3}, {3, 1}, {3, 3}}) {
        const auto set = random_pt_set(n, m, 2, 0.8, 300 + n + m);
        for (double lambda = -9.5; lambda <= 9.5; lambda += 1.9) {
            CHECK(dimension_split(multipliers(set, lambda), 1e-6).on >= 1);
        }
    }
}

TEST_CASE("even n*m: inside equals outside in spectral gaps") {
    for (auto [n, m] : {std::pair{2, 1}, {1, 2}, {2, 2}}) {
        const auto set = random_pt_set(n, m, 2, 0.8, 400 + n + m);
        for (double lambda = -9.5; lambda <= 9.5; lambda += 0.95) {
            const auto ms = multipliers(set, lambda);
            if (spectral_distance(ms) <= 1e-5) continue;
            const auto split = dimension_split(ms, 1e-6);
            CHECK(split.inside == split.outside);
        }
    }
}

TEST_CASE("multiplier involution across the real axis") {
    const auto set = random_pt_set(2, 2, 2, 0.8, 12);
    for (const Complex lambda : {Complex(0.3, 0.8), Complex(-3.0, -0.5), Complex(2.0)}) {
        std::vector<Complex> reflected;
        for (const auto& mu : multipliers(set, lambda).multipliers) reflected.push_back(1.0 / std::conj(mu));
        CHECK(multiset_distance(reflected, multipliers(set, std::conj(lambda)).multipliers) < 1e-6);
    }
}

TEST_CASE("scan_real") {
    const auto scan = scan_real(CoefficientSet(1, 1), -5.0, 5.0, 11);
    CHECK(scan.rows == 1);
    REQUIRE(scan.points.size() == 11);
    for (const auto& p : scan.points) CHECK(p.in_spectrum);
    CHECK(scan.points.front().lambda.real() == -5.0);
    CHECK(scan.points.back().lambda.real() == 5.0);

    const auto random33 = scan_real(random_pt_set(3, 3, 2, 0.5, 42), -10.0, 10.0, 50);
    for (const auto& p : random33.points) CHECK(p.in_spectrum);

    CHECK_THROWS_AS(scan_real(CoefficientSet(1, 1), 1.0, 1.0, 5), ParameterError);
    CHECK_THROWS_AS(scan_real(CoefficientSet(1, 1), 0.0, 1.0, 1), ParameterError);
}

TEST_CASE("scan_region") {
    SUBCASE("free first-order operator: spectrum is exactly the real row") {
        const auto scan = scan_region(CoefficientSet(1, 1), -1, 1, -1, 1, 21, 21);
        for (int r = 0; r < 21; ++r) {
            for (int c = 0; c < 21; ++c) {
                const auto& p = scan.at(r, c);
                CHECK(p.in_spectrum == (r == 10));
                CHECK(p.distance == doctest::Approx(std::exp(std::abs(p.lambda.imag())) - 1.0).epsilon(1e-8));
            }
        }
        CHECK(scan.at(10, 3).lambda.imag() == 0.0);
    }
    SUBCASE("symmetric grid gives mirrored distances") {
        const auto set = random_pt_set(2, 2, 2, 0.8, 6);
        const auto scan = scan_region(set, -4, 4, -1, 1, 9, 7);
        for (int r = 0; r < 7; ++r) {
            for (int c = 0; c < 9; ++c) {
                CHECK(scan.at(r, c).lambda == std::conj(scan.at(6 - r, c).lambda));
                CHECK(std::abs(scan.at(r, c).distance - scan.at(6 - r, c).distance) <= 1e-6);
            }
        }
    }
    SUBCASE("rectangle away from the spectrum") {
        const auto scan = scan_region(CoefficientSet(1, 1), -1, 1, 0.5, 1, 5, 5);
        for (const auto& p : scan.points) CHECK_FALSE(p.in_spectrum);
    }
}

TEST_CASE("char_det") {
    const CoefficientSet free1(1, 1);
    CHECK(std::abs(char_det(free1, 0.0, 0.0)) < 1e-12);
    CHECK(std::abs(char_det(free1, kPi, 0.0) - Complex(-2.0)) < 1e-8);
    const auto set = random_pt_set(3, 2, 2, 0.7, 13);
    const Complex lambda(1.1, 0.2);
    for (double t : {0.0, 1.3, 4.0}) {
        Complex product = 1.0;
        for (const auto& mu : multipliers(set, lambda).multipliers) product *= mu - std::polar(1.0, t);
        const Complex D = char_det(set, lambda, t);
        CHECK(std::abs(product - D) <= 1e-7 * std::abs(D));
    }
}
