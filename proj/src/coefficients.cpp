#include "ptfloquet/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ptfloquet/errors.hpp"

namespace ptfloquet {

namespace {

void check_shape(int n, int m) {
    if (n < 1 || m < 1) {
        throw ParameterError("coefficient set needs n >= 1 and m >= 1 (got n=" + std::to_string(n) +
                             ", m=" + std::to_string(m) + ")");
    }
}

void check_order_index(int k, int n) {
    if (k < 1 || k > n) {
        throw OrderIndexError("order index k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
    }
}

} // namespace

FourierEntry::FourierEntry(std::vector<double> cos_part, std::vector<double> sin_part)
    : a(std::move(cos_part)), b(std::move(sin_part)) {
    if (a.empty()) a.push_back(0.0);
    if (b.size() + 1 > a.size()) a.resize(b.size() + 1, 0.0);
    if (b.size() + 1 < a.size()) b.resize(a.size() - 1, 0.0);
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite)) {
        throw MalformedInputError("Fourier entry contains a non-finite coefficient");
    }
}

bool FourierEntry::is_constant() const {
    auto zero = [](double v) { return v == 0.0; };
    return a.empty() || (std::all_of(a.begin() + 1, a.end(), zero) && std::all_of(b.begin(), b.end(), zero));
}

Complex eval_entry(const FourierEntry& entry, double x) {
    double re = entry.a.empty() ? 0.0 : entry.a[0];
    double im = 0.0;
    for (std::size_t l = 1; l < entry.a.size(); ++l) re += entry.a[l] * std::cos(kTwoPi * l * x);
    for (std::size_t l = 1; l <= entry.b.size(); ++l) im += entry.b[l - 1] * std::sin(kTwoPi * l * x);
    return {re, im};
}

CoefficientSet::CoefficientSet(int n, int m) : n_(n), m_(m) {
    check_shape(n, m);
    entries_.assign(static_cast<std::size_t>(n) * m * m, FourierEntry{});
}

CoefficientSet::CoefficientSet(int n, int m, std::vector<std::vector<FourierEntry>> entries)
    : n_(n), m_(m) {
    check_shape(n, m);
    if (entries.size() != static_cast<std::size_t>(n)) {
        throw MalformedInputError("expected " + std::to_string(n) + " coefficient matrices, got " +
                                  std::to_string(entries.size()));
    }
    entries_.reserve(static_cast<std::size_t>(n) * m * m);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].size() != static_cast<std::size_t>(m) * m) {
            throw MalformedInputError("coefficient matrix P_" + std::to_string(k + 1) + " must have " +
                                      std::to_string(m * m) + " entries");
        }
        for (auto& e : entries[k]) entries_.push_back(std::move(e));
    }
}

std::size_t CoefficientSet::index(int k, int i, int j) const {
    check_order_index(k, n_);
    if (i < 0 || i >= m_ || j < 0 || j >= m_) {
        throw OrderIndexError("entry index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside a " + std::to_string(m_) + "x" + std::to_string(m_) + " matrix");
    }
    return (static_cast<std::size_t>(k - 1) * m_ + i) * m_ + j;
}

const FourierEntry& CoefficientSet::entry(int k, int i, int j) const { return entries_[index(k, i, j)]; }

FourierEntry& CoefficientSet::entry(int k, int i, int j) { return entries_[index(k, i, j)]; }

void CoefficientSet::evaluate(double x, std::vector<ComplexMatrix>& out) const {
    out.resize(n_);
    int degree = 0;
    for (const auto& e : entries_) degree = std::max(degree, e.degree());
    // cos/sin of 2 pi l x, shared by every entry
    thread_local std::vector<double> cs, sn;
    cs.resize(degree + 1);
    sn.resize(degree + 1);
    for (int l = 1; l <= degree; ++l) {
        cs[l] = std::cos(kTwoPi * l * x);
        sn[l] = std::sin(kTwoPi * l * x);
    }
    std::size_t idx = 0;
    for (int k = 0; k < n_; ++k) {
        out[k].resize(m_, m_);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < m_; ++j, ++idx) {
                const auto& e = entries_[idx];
                double re = e.a.empty() ? 0.0 : e.a[0];
                double im = 0.0;
                for (std::size_t l = 1; l < e.a.size(); ++l) re += e.a[l] * cs[l];
                for (std::size_t l = 1; l <= e.b.size(); ++l) im += e.b[l - 1] * sn[l];
                out[k](i, j) = Complex(re, im);
            }
        }
    }
}

Complex CoefficientSet::mean(int k, int i, int j) const {
    const auto& e = entry(k, i, j);
    return e.a.empty() ? 0.0 : e.a[0];
}

bool CoefficientSet::is_constant() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const FourierEntry& e) { return e.is_constant(); });
}

bool operator==(const CoefficientSet& lhs, const CoefficientSet& rhs) {
    if (lhs.n_ != rhs.n_ || lhs.m_ != rhs.m_) return false;
    for (std::size_t q = 0; q < lhs.entries_.size(); ++q) {
        if (lhs.entries_[q].a != rhs.entries_[q].a || lhs.entries_[q].b != rhs.entries_[q].b) return false;
    }
    return true;
}

ComplexMatrix eval_matrix(const PeriodicCoefficients& set, int k, double x) {
    check_order_index(k, set.order());
    std::vector<ComplexMatrix> all;
    set.evaluate(x, all);
    return all[k - 1];
}

ComplexFourierSet::ComplexFourierSet(int n, int m, std::vector<std::vector<Complex>> coeffs)
    : n_(n), m_(m), coeffs_(std::move(coeffs)) {
    check_shape(n, m);
    if (coeffs_.size() != static_cast<std::size_t>(n) * m * m) {
        throw MalformedInputError("expected " + std::to_string(n * m * m) + " coefficient entries, got " +
                                  std::to_string(coeffs_.size()));
    }
    for (auto& c : coeffs_) {
        if (c.empty()) c.push_back(0.0);
        if (c.size() % 2 == 0) throw MalformedInputError("exponential Fourier entry must have odd length 2L+1");
        for (const auto& v : c) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw MalformedInputError("Fourier entry contains a non-finite coefficient");
            }
        }
    }
}

ComplexFourierSet ComplexFourierSet::from(const CoefficientSet& set) {
    const int n = set.order();
    const int m = set.dim();
    std::vector<std::vector<Complex>> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) * m * m);
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                const auto& e = set.entry(k, i, j);
                const int degree = e.degree();
                std::vector<Complex> c(2 * degree + 1);
                c[degree] = e.a.empty() ? 0.0 : e.a[0];
                // a cos + i b sin = (a+b)/2 e^{+} + (a-b)/2 e^{-}
                for (int l = 1; l <= degree; ++l) {
                    const double al = l < static_cast<int>(e.a.size()) ? e.a[l] : 0.0;
                    const double bl = l <= static_cast<int>(e.b.size()) ? e.b[l - 1] : 0.0;
                    c[degree + l] = 0.5 * (al + bl);
                    c[degree - l] = 0.5 * (al - bl);
                }
                coeffs.push_back(std::move(c));
            }
        }
    }
    return ComplexFourierSet(n, m, std::move(coeffs));
}

std::size_t ComplexFourierSet::index(int k, int i, int j) const {
    check_order_index(k, n_);
    if (i < 0 || i >= m_ || j < 0 || j >= m_) {
        throw OrderIndexError("entry index outside the coefficient matrix");
    }
    return (static_cast<std::size_t>(k - 1) * m_ + i) * m_ + j;
}

const std::vector<Complex>& ComplexFourierSet::coefficients(int k, int i, int j) const {
    return coeffs_[index(k, i, j)];
}

std::vector<Complex>& ComplexFourierSet::coefficients(int k, int i, int j) { return coeffs_[index(k, i, j)]; }

void ComplexFourierSet::evaluate(double x, std::vector<ComplexMatrix>& out) const {
    out.resize(n_);
    std::size_t idx = 0;
    for (int k = 0; k < n_; ++k) {
        out[k].resize(m_, m_);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < m_; ++j, ++idx) {
                const auto& c = coeffs_[idx];
                const int degree = static_cast<int>(c.size() / 2);
                Complex sum = c[degree];
                for (int l = 1; l <= degree; ++l) {
                    const Complex w = std::polar(1.0, kTwoPi * l * x);
                    sum += c[degree + l] * w + c[degree - l] * std::conj(w);
                }
                out[k](i, j) = sum;
            }
        }
    }
}

Complex ComplexFourierSet::mean(int k, int i, int j) const {
    const auto& c = coefficients(k, i, j);
    return c[c.size() / 2];
}

PtReport check_pt_symmetry(const ComplexFourierSet& raw, double tol) {
    PtReport report;
    report.tolerance = tol;
    for (int k = 1; k <= raw.order(); ++k) {
        for (int i = 0; i < raw.dim(); ++i) {
            for (int j = 0; j < raw.dim(); ++j) {
                const auto& c = raw.coefficients(k, i, j);
                const int degree = static_cast<int>(c.size() / 2);
                for (int l = -degree; l <= degree; ++l) {
                    const double r = std::abs(c[degree + l].imag());
                    if (r > report.worst_residual) {
                        report.worst_residual = r;
                        report.k = k;
                        report.i = i;
                        report.j = j;
                        report.location = l;
                    }
                }
            }
        }
    }
    report.pass = report.worst_residual <= tol;
    return report;
}

PtReport check_pt_symmetry(const SampledCoefficients& raw, double tol) {
    const std::size_t entries = static_cast<std::size_t>(std::max(raw.n, 0)) * raw.m * raw.m;
    if (raw.n < 1 || raw.m < 1 || raw.grid.empty() || raw.values.size() != entries) {
        throw MalformedInputError("sampled coefficient table is empty or has the wrong shape");
    }
    for (const auto& v : raw.values) {
        if (v.size() != raw.grid.size()) throw MalformedInputError("sample count does not match the grid");
    }
    // Pair each grid point with its mirror image.
    const double scale = std::max(1.0, std::abs(*std::max_element(
        raw.grid.begin(), raw.grid.end(), [](double p, double q) { return std::abs(p) < std::abs(q); })));
    std::vector<std::size_t> mirror(raw.grid.size());
    for (std::size_t s = 0; s < raw.grid.size(); ++s) {
        std::size_t best = raw.grid.size();
        double best_gap = 1e-9 * scale;
        for (std::size_t r = 0; r < raw.grid.size(); ++r) {
            const double gap = std::abs(raw.grid[r] + raw.grid[s]);
            if (gap <= best_gap) {
                best_gap = gap;
                best = r;
            }
        }
        if (best == raw.grid.size()) {
            throw MalformedInputError("sample grid is not symmetric: no mirror for x=" + std::to_string(raw.grid[s]));
        }
        mirror[s] = best;
    }

    PtReport report;
    report.tolerance = tol;
    std::size_t idx = 0;
    for (int k = 1; k <= raw.n; ++k) {
        for (int i = 0; i < raw.m; ++i) {
            for (int j = 0; j < raw.m; ++j, ++idx) {
                const auto& v = raw.values[idx];
                for (std::size_t s = 0; s < v.size(); ++s) {
                    const double r = std::abs(v[mirror[s]] - std::conj(v[s]));
                    if (r > report.worst_residual) {
                        report.worst_residual = r;
                        report.k = k;
                        report.i = i;
                        report.j = j;
                        report.location = raw.grid[s];
                    }
                }
            }
        }
    }
    report.pass = report.worst_residual <= tol;
    return report;
}

CoefficientSet to_pt_set(const ComplexFourierSet& raw, double tol) {
    const auto report = check_pt_symmetry(raw, tol);
    if (!report.pass) {
        throw MalformedInputError("coefficients are not PT-symmetric: |Im c_l| = " +
                                  std::to_string(report.worst_residual) + " at P_" + std::to_string(report.k) +
                                  "(" + std::to_string(report.i) + "," + std::to_string(report.j) +
                                  "), l=" + std::to_string(static_cast<int>(report.location)));
    }
    const int n = raw.order();
    const int m = raw.dim();
    std::vector<std::vector<FourierEntry>> entries(n);
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                const auto& c = raw.coefficients(k, i, j);
                const int degree = static_cast<int>(c.size() / 2);
                std::vector<double> a(degree + 1), b(degree);
                a[0] = c[degree].real();
                for (int l = 1; l <= degree; ++l) {
                    a[l] = c[degree + l].real() + c[degree - l].real();
                    b[l - 1] = c[degree + l].real() - c[degree - l].real();
                }
                entries[k - 1].emplace_back(std::move(a), std::move(b));
            }
        }
    }
    return CoefficientSet(n, m, std::move(entries));
}

CoefficientSet random_pt_set(int n, int m, int degree, double amplitude, std::uint64_t seed) {
    check_shape(n, m);
    if (degree < 0) throw ParameterError("Fourier degree must be non-negative");
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw ParameterError("amplitude must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    std::vector<std::vector<FourierEntry>> entries(n);
    for (int k = 0; k < n; ++k) {
        for (int q = 0; q < m * m; ++q) {
            std::vector<double> a(degree + 1), b(degree);
            for (auto& v : a) v = dist(rng);
            for (auto& v : b) v = dist(rng);
            entries[k].emplace_back(std::move(a), std::move(b));
        }
    }
    return CoefficientSet(n, m, std::move(entries));
}

} // namespace ptfloquet
