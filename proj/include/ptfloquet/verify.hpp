#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptfloquet/coefficients.hpp"
#include "ptfloquet/propagator.hpp"
#include "ptfloquet/types.hpp"

namespace ptfloquet {

struct CheckReport {
    std::string name;
    bool pass = false;
    double worst_residual = 0.0;
    double tolerance = 0.0;
    nlohmann::json witness = nlohmann::json::object();  // inputs at the worst residual
    std::string note;
};

/// Multiplier of i y' + p(x) y = lambda y: exp(i (a_0 - lambda)).
Complex oracle_scalar_first_order(const FourierEntry& entry, Complex lambda);

/// exp of the eigenvalues of the (constant) companion matrix.
/// Throws PreconditionError if any entry has non-constant Fourier content.
std::vector<Complex> oracle_constant_coefficients(const CoefficientSet& set, Complex lambda);

/// det X(1, lambda) against exp of the exact trace integral (relative error).
CheckReport check_liouville(const PeriodicCoefficients& set, Complex lambda, const IntegratorSettings& settings,
                            double tol);

/// {1/conj(mu) : mu in M(lambda)} against M(conj lambda), pairwise.
CheckReport check_multiplier_involution(const PeriodicCoefficients& set, Complex lambda,
                                        const IntegratorSettings& settings, double tol);

/// Integrates Psi backward over [-1, 0] from `init`, builds Phi(0) from
/// Phi^(k)(0) = (-1)^k conj(Psi^(k)(0)), integrates Phi forward over [0, 1]
/// at conj(lambda), and compares Phi(x) with the reflected Psi on N mirrored
/// samples. Also compares the sampled L2 norms over [0, 1] and [-1, 0].
CheckReport check_pt_reflection_solution(const PeriodicCoefficients& set, Complex lambda,
                                         const ComplexVector& init, int N, const IntegratorSettings& settings,
                                         double tol);

/// Every real grid point has spectral distance <= tol_circle and at least
/// one multiplier on the circle. Requires odd n*m.
CheckReport check_real_line_coverage(const PeriodicCoefficients& set, const std::vector<double>& lambdas,
                                     const IntegratorSettings& settings, double tol_circle);

/// det of the canonical boundary matrix against char_det (relative).
CheckReport check_char_eq_equivalence(const PeriodicCoefficients& set, Complex lambda, double t,
                                      const IntegratorSettings& settings, double tol);

/// inside == outside at every real sample with distance > 10 tol_circle.
/// Requires even n*m.
CheckReport check_dimension_balance(const PeriodicCoefficients& set, const std::vector<double>& lambdas,
                                    const IntegratorSettings& settings, double tol_circle);

struct VerificationCase {
    std::string label;  // e.g. "(3,3)/random"
    std::shared_ptr<const PeriodicCoefficients> coefficients;
    // PT representation when available; oracles need it.
    std::shared_ptr<const CoefficientSet> pt_set;
};

struct SuiteOptions {
    bool break_pt = false;  // add sin(2 pi x) to every entry of the random cases
};

/// {(1,1),(1,3),(3,1),(3,3),(2,1),(1,2),(2,2)} x {zero, constant, random}.
std::vector<VerificationCase> default_cases(std::uint64_t seed, const SuiteOptions& options = {});

/// Runs every applicable check on each case. Numerical failures inside a
/// check are recorded as failed reports.
std::vector<CheckReport> run_checks(const std::vector<VerificationCase>& cases, std::uint64_t seed,
                                    const IntegratorSettings& settings = {});

std::vector<CheckReport> run_verification_suite(std::uint64_t seed, const IntegratorSettings& settings = {},
                                                const SuiteOptions& options = {});

/// Names of the check families run by the suite.
std::vector<std::string> check_names();

/// Adds sin(2 pi x) to every entry, breaking p(-x) = conj(p(x)).
ComplexFourierSet break_pt_symmetry(const CoefficientSet& set);

nlohmann::json to_json(const CheckReport& report);

} // namespace ptfloquet
