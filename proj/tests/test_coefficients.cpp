#include <doctest.h>

#include <cmath>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/errors.hpp"
#include "ptfloquet/io.hpp"

using namespace ptfloquet;

TEST_CASE("eval_entry on elementary entries") {
    CHECK(std::abs(eval_entry(FourierEntry({0, 2}, {0}), 0.0) - Complex(2.0)) < 1e-15);
    CHECK(std::abs(eval_entry(FourierEntry({0, 2}, {0}), 0.25)) < 1e-15);
    CHECK(std::abs(eval_entry(FourierEntry({0, 0}, {1}), 0.25) - kI) < 1e-15);
}

TEST_CASE("eval_matrix") {
    SUBCASE("zero set gives the zero matrix") {
        CoefficientSet zero(3, 2);
        for (int k = 1; k <= 3; ++k) CHECK(eval_matrix(zero, k, 0.37).norm() == 0.0);
    }
    SUBCASE("1x1 cosine at half period") {
        CoefficientSet set(1, 1, {{FourierEntry({0, 2}, {0})}});
        const auto P = eval_matrix(set, 1, 0.5);
        CHECK(std::abs(P(0, 0) - Complex(-2.0)) < 1e-14);
    }
    SUBCASE("identity pattern") {
        CoefficientSet set(1, 2, {{FourierEntry::constant(1), FourierEntry{}, FourierEntry{}, FourierEntry::constant(1)}});
        for (double x : {-0.3, 0.0, 0.71}) CHECK((eval_matrix(set, 1, x) - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
    }
    SUBCASE("order index out of range") {
        CoefficientSet set(2, 1);
        CHECK_THROWS_AS(eval_matrix(set, 0, 0.0), OrderIndexError);
        CHECK_THROWS_AS(eval_matrix(set, 3, 0.0), OrderIndexError);
    }
}

TEST_CASE("PT symmetry and periodicity hold for random entries on a dense grid") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto set = random_pt_set(2, 2, 4, 1.5, seed);
        for (int k = 1; k <= 2; ++k) {
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const auto& e = set.entry(k, i, j);
                    for (int s = 0; s <= 400; ++s) {
                        const double x = -1.0 + s / 200.0;
                        CHECK(std::abs(eval_entry(e, -x) - std::conj(eval_entry(e, x))) <= 1e-12);
                        CHECK(std::abs(eval_entry(e, x + 1.0) - eval_entry(e, x)) <= 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("mean value over one period equals a_0") {
    // independent check by the composite trapezoid rule, exact for trig polynomials
    const auto set = random_pt_set(1, 1, 3, 1.0, 11);
    const auto& e = set.entry(1, 0, 0);
    const int N = 64;
    Complex sum = 0.0;
    for (int s = 0; s < N; ++s) sum += eval_entry(e, static_cast<double>(s) / N);
    sum /= N;
    CHECK(std::abs(sum - e.a[0]) < 1e-14);
    CHECK(set.mean(1, 0, 0) == Complex(e.a[0]));
}

TEST_CASE("check_pt_symmetry, coefficient form") {
    SUBCASE("i sin(2 pi x) passes") {
        ComplexFourierSet raw(1, 1, {{Complex(-0.5), Complex(0.0), Complex(0.5)}});
        CHECK(check_pt_symmetry(raw, 0.0).pass);
    }
    SUBCASE("sin(2 pi x) fails") {
        ComplexFourierSet raw(1, 1, {{Complex(0, 0.5), Complex(0.0), Complex(0, -0.5)}});
        const auto report = check_pt_symmetry(raw, 1e-12);
        CHECK_FALSE(report.pass);
        CHECK(report.worst_residual == doctest::Approx(0.5));
        CHECK(report.k == 1);
    }
    SUBCASE("constant real matrix passes") {
        ComplexFourierSet raw(1, 2, {{Complex(1.0)}, {Complex(-2.0)}, {Complex(0.25)}, {Complex(3.0)}});
        CHECK(check_pt_symmetry(raw, 0.0).pass);
    }
    SUBCASE("worst offender is reported") {
        ComplexFourierSet raw(2, 1, {{Complex(0.0)}, {Complex(0.0, 1e-3), Complex(1.0), Complex(0.0, 2e-3)}});
        const auto report = check_pt_symmetry(raw, 1e-6);
        CHECK_FALSE(report.pass);
        CHECK(report.k == 2);
        CHECK(report.location == 1.0);
    }
}

TEST_CASE("check_pt_symmetry, sampled form") {
    auto tabulate = [](auto&& p) {
        SampledCoefficients raw;
        raw.n = 1;
        raw.m = 1;
        for (int s = -10; s <= 10; ++s) raw.grid.push_back(s / 20.0);
        raw.values.resize(1);
        for (double x : raw.grid) raw.values[0].push_back(p(x));
        return raw;
    };
    CHECK(check_pt_symmetry(tabulate([](double x) { return kI * std::sin(kTwoPi * x); }), 1e-14).pass);
    const auto bad = check_pt_symmetry(tabulate([](double x) { return Complex(std::sin(kTwoPi * x)); }), 1e-14);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_residual == doctest::Approx(2.0));
    CHECK(check_pt_symmetry(tabulate([](double) { return Complex(4.0); }), 0.0).pass);

    SUBCASE("empty input is malformed") {
        SampledCoefficients empty;
        CHECK_THROWS_AS(check_pt_symmetry(empty, 1e-12), MalformedInputError);
    }
    SUBCASE("asymmetric grid is malformed") {
        auto raw = tabulate([](double) { return Complex(1.0); });
        raw.grid.back() = 0.6;
        CHECK_THROWS_AS(check_pt_symmetry(raw, 1e-12), MalformedInputError);
    }
}

TEST_CASE("to_pt_set converts validated exponential coefficients") {
    const auto set = random_pt_set(2, 2, 3, 1.0, 5);
    const auto raw = ComplexFourierSet::from(set);
    CHECK(check_pt_symmetry(raw, 0.0).pass);
    const auto back = to_pt_set(raw, 0.0);
    for (double x : {-0.77, -0.1, 0.0, 0.3, 0.9}) {
        std::vector<ComplexMatrix> p1, p2, p3;
        set.evaluate(x, p1);
        back.evaluate(x, p2);
        raw.evaluate(x, p3);
        for (int k = 0; k < 2; ++k) {
            CHECK((p1[k] - p2[k]).norm() < 1e-13);
            CHECK((p1[k] - p3[k]).norm() < 1e-13);
        }
    }
    ComplexFourierSet bad(1, 1, {{Complex(0, 0.5), Complex(0.0), Complex(0, -0.5)}});
    CHECK_THROWS_AS(to_pt_set(bad, 1e-12), MalformedInputError);
}

TEST_CASE("random_pt_set") {
    SUBCASE("deterministic for a fixed seed") {
        CHECK(random_pt_set(3, 2, 2, 0.7, 99) == random_pt_set(3, 2, 2, 0.7, 99));
        CHECK_FALSE(random_pt_set(3, 2, 2, 0.7, 99) == random_pt_set(3, 2, 2, 0.7, 100));
    }
    SUBCASE("shape") {
        const auto set = random_pt_set(3, 3, 2, 1.0, 1);
        CHECK(set.order() == 3);
        CHECK(set.dim() == 3);
        for (int k = 1; k <= 3; ++k) {
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    CHECK(set.entry(k, i, j).a.size() == 3);
                    CHECK(set.entry(k, i, j).b.size() == 2);
                    for (double v : set.entry(k, i, j).a) CHECK(std::abs(v) <= 1.0);
                }
            }
        }
    }
    SUBCASE("passes the validator at tolerance 0") {
        CHECK(check_pt_symmetry(ComplexFourierSet::from(random_pt_set(2, 3, 3, 2.0, 8)), 0.0).pass);
    }
    SUBCASE("parameter errors") {
        CHECK_THROWS_AS(random_pt_set(1, 1, 1, 0.0, 1), ParameterError);
        CHECK_THROWS_AS(random_pt_set(1, 1, 1, -1.0, 1), ParameterError);
        CHECK_THROWS_AS(random_pt_set(0, 1, 1, 1.0, 1), ParameterError);
    }
}

TEST_CASE("coefficient JSON round-trips and rejects malformed input") {
    const auto set = random_pt_set(2, 3, 2, 1.0, 4);
    CHECK(coefficient_set_from_json(to_json(set)) == set);
    CHECK(coefficient_set_from_json(nlohmann::json::parse(to_json(set).dump())) == set);

    CHECK_THROWS_AS(coefficient_set_from_json(nlohmann::json::parse(R"({"n":1})")), MalformedInputError);
    CHECK_THROWS_AS(coefficient_set_from_json(nlohmann::json::parse(R"({"n":1,"m":1,"P":[]})")), MalformedInputError);
    CHECK_THROWS_AS(coefficient_set_from_json(nlohmann::json::parse(R"({"n":1,"m":1,"P":[[[{"a":["x"]}]]]})")),
                    MalformedInputError);
    CHECK_THROWS_AS(load_coefficient_file("/nonexistent/coeffs.json"), InputError);
}
