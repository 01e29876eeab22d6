#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ptfloquet/types.hpp"

namespace ptfloquet {

/// Source of the 1-periodic coefficient matrices P_1..P_n of
///   i^n y^(n) + i^(n-1) P_1 y^(n-1) + ... + P_n y = lambda y.
/// Index k is 1-based, matching the order of the derivative it multiplies
/// (P_k multiplies y^(n-k)).
class PeriodicCoefficients {
public:
    virtual ~PeriodicCoefficients() = default;

    virtual int order() const = 0;
    virtual int dim() const = 0;

    /// Fills out[k-1] with P_k(x) for k = 1..n. `out` is resized as needed.
    virtual void evaluate(double x, std::vector<ComplexMatrix>& out) const = 0;

    /// Exact mean over one period of the (i,j) entry of P_k.
    virtual Complex mean(int k, int i, int j) const = 0;
};

/// p(x) = a_0 + sum_l [a_l cos(2 pi l x) + i b_l sin(2 pi l x)] with real a, b.
/// Every such function is 1-periodic and satisfies p(-x) = conj(p(x)).
struct FourierEntry {
    std::vector<double> a{0.0};  // a_0..a_L
    std::vector<double> b;       // b_1..b_L

    FourierEntry() = default;
    FourierEntry(std::vector<double> cos_part, std::vector<double> sin_part);

    static FourierEntry constant(double a0) { return FourierEntry({a0}, {}); }

    int degree() const {
        return std::max(static_cast<int>(a.size()) - 1, static_cast<int>(b.size()));
    }
    bool is_constant() const;
};

Complex eval_entry(const FourierEntry& entry, double x);

/// PT-symmetric coefficient set with trigonometric-polynomial entries.
class CoefficientSet final : public PeriodicCoefficients {
public:
    /// Zero potential of order n and dimension m.
    CoefficientSet(int n, int m);
    /// `entries[k-1]` holds P_k row-major (m*m entries).
    CoefficientSet(int n, int m, std::vector<std::vector<FourierEntry>> entries);

    int order() const override { return n_; }
    int dim() const override { return m_; }
    void evaluate(double x, std::vector<ComplexMatrix>& out) const override;
    Complex mean(int k, int i, int j) const override;

    const FourierEntry& entry(int k, int i, int j) const;
    FourierEntry& entry(int k, int i, int j);

    /// True when every entry has no non-constant Fourier content.
    bool is_constant() const;

    friend bool operator==(const CoefficientSet&, const CoefficientSet&);

private:
    std::size_t index(int k, int i, int j) const;

    int n_;
    int m_;
    std::vector<FourierEntry> entries_;  // k-major, then row-major
};

/// Entry-wise P_k(x); throws OrderIndexError for k outside 1..n.
ComplexMatrix eval_matrix(const PeriodicCoefficients& set, int k, double x);

/// Entries given by complex exponential Fourier coefficients
/// p(x) = sum_{l=-L..L} c_l exp(2 pi i l x). No symmetry is implied; this
/// is the general input form and the carrier for deliberately non-PT
/// potentials.
class ComplexFourierSet final : public PeriodicCoefficients {
public:
    /// `coeffs[(k-1)*m*m + i*m + j]` has odd length 2L+1, index l+L.
    ComplexFourierSet(int n, int m, std::vector<std::vector<Complex>> coeffs);

    /// Exponential-Fourier form of a PT set.
    static ComplexFourierSet from(const CoefficientSet& set);

    int order() const override { return n_; }
    int dim() const override { return m_; }
    void evaluate(double x, std::vector<ComplexMatrix>& out) const override;
    Complex mean(int k, int i, int j) const override;

    const std::vector<Complex>& coefficients(int k, int i, int j) const;
    std::vector<Complex>& coefficients(int k, int i, int j);

private:
    std::size_t index(int k, int i, int j) const;

    int n_;
    int m_;
    std::vector<std::vector<Complex>> coeffs_;
};

/// Entries tabulated on a grid that is symmetric about x = 0.
struct SampledCoefficients {
    int n = 0;
    int m = 0;
    std::vector<double> grid;
    std::vector<std::vector<Complex>> values;  // [(k-1)*m*m + i*m + j][sample]
};

struct PtReport {
    bool pass = false;
    double worst_residual = 0.0;
    double tolerance = 0.0;
    // Worst offender: 1-based k, 0-based (i, j); `location` is the sample
    // point x (sampled form) or the Fourier index l (coefficient form).
    int k = 0;
    int i = 0;
    int j = 0;
    double location = 0.0;
};

/// Passes iff max_l |Im c_l| <= tol over all entries.
PtReport check_pt_symmetry(const ComplexFourierSet& raw, double tol);
/// Passes iff max |p(-x) - conj(p(x))| <= tol over all entries and grid points.
PtReport check_pt_symmetry(const SampledCoefficients& raw, double tol);

/// Validates `raw` at `tol`, then converts it to the PT representation
/// (discarding imaginary parts below the tolerance).
CoefficientSet to_pt_set(const ComplexFourierSet& raw, double tol);

/// Seeded random PT set; every a_l, b_l is uniform in [-amplitude, amplitude].
CoefficientSet random_pt_set(int n, int m, int degree, double amplitude, std::uint64_t seed);

} // namespace ptfloquet
