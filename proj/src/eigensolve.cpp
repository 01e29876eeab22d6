#include "ptfloquet/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "ptfloquet/errors.hpp"

namespace ptfloquet {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Unitary G = [c s; -conj(s) c] with G [a; b] = [r; 0].
struct Givens {
    double c;
    Complex s;
};

Givens make_givens(Complex a, Complex b) {
    const double norm_b = std::abs(b);
    if (norm_b == 0.0) return {1.0, 0.0};
    const double norm_a = std::abs(a);
    if (norm_a == 0.0) return {0.0, std::conj(b) / norm_b};
    const double r = std::hypot(norm_a, norm_b);
    return {norm_a / r, (a / norm_a) * std::conj(b) / r};
}

// One explicit shifted QR sweep on the active Hessenberg window [lo, hi].
void qr_sweep(ComplexMatrix& H, int lo, int hi, Complex shift) {
    for (int q = lo; q <= hi; ++q) H(q, q) -= shift;
    std::vector<Givens> rotations;
    rotations.reserve(hi - lo);
    for (int k = lo; k < hi; ++k) {
        const Givens g = make_givens(H(k, k), H(k + 1, k));
        rotations.push_back(g);
        for (int col = k; col <= hi; ++col) {
            const Complex top = H(k, col);
            const Complex bot = H(k + 1, col);
            H(k, col) = g.c * top + g.s * bot;
            H(k + 1, col) = -std::conj(g.s) * top + g.c * bot;
        }
        H(k + 1, k) = 0.0;
    }
    for (int k = lo; k < hi; ++k) {
        const Givens& g = rotations[k - lo];
        const int last_row = std::min(k + 2, hi);
        for (int row = lo; row <= last_row; ++row) {
            const Complex left = H(row, k);
            const Complex right = H(row, k + 1);
            H(row, k) = left * g.c + right * std::conj(g.s);
            H(row, k + 1) = -left * g.s + right * g.c;
        }
    }
    for (int q = lo; q <= hi; ++q) H(q, q) += shift;
}

Complex wilkinson_shift(const ComplexMatrix& H, int hi) {
    const Complex a = H(hi - 1, hi - 1);
    const Complex b = H(hi - 1, hi);
    const Complex c = H(hi, hi - 1);
    const Complex d = H(hi, hi);
    const Complex half = 0.5 * (a - d);
    const Complex root = std::sqrt(half * half + b * c);
    const Complex mu1 = 0.5 * (a + d) + root;
    const Complex mu2 = 0.5 * (a + d) - root;
    return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

} // namespace

void reduce_to_hessenberg(ComplexMatrix& M) {
    const Eigen::Index d = M.rows();
    for (Eigen::Index k = 0; k + 2 < d; ++k) {
        const Eigen::Index len = d - k - 1;
        ComplexVector v = M.col(k).tail(len);
        const double norm = v.norm();
        if (norm == 0.0) continue;
        const Complex x0 = v(0);
        const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
        v(0) += phase * norm;
        const double vnorm = v.norm();
        if (vnorm == 0.0) continue;
        v /= vnorm;
        // M <- (I - 2 v v^H) M (I - 2 v v^H)
        auto rows = M.bottomRows(len);
        const Eigen::RowVectorXcd left = v.adjoint() * rows;
        rows.noalias() -= 2.0 * v * left;
        auto cols = M.rightCols(len);
        const ComplexVector right = cols * v;
        cols.noalias() -= 2.0 * right * v.adjoint();
        M.col(k).tail(len - 1).setZero();
    }
}

std::vector<Complex> eigenvalues(const ComplexMatrix& M) {
    if (M.rows() != M.cols() || M.rows() == 0) throw ParameterError("eigenvalues need a non-empty square matrix");
    if (!M.array().real().allFinite() || !M.array().imag().allFinite()) {
        throw ParameterError("eigenvalues need finite matrix entries");
    }
    const int d = static_cast<int>(M.rows());
    ComplexMatrix H = M;
    reduce_to_hessenberg(H);
    const double scale = std::max(H.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

    std::vector<Complex> out(d);
    const int max_iter = 60;
    int hi = d - 1;
    int iter = 0;
    while (hi >= 0) {
        if (hi == 0) {
            out[0] = H(0, 0);
            break;
        }
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
            if (s == 0.0) s = scale;
            if (std::abs(H(lo, lo - 1)) <= kEps * s) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            out[hi] = H(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++iter > max_iter) {
            throw EigensolverFailure("QR iteration did not converge for eigenvalue " + std::to_string(hi) +
                                     " of a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
        }
        Complex shift;
        if (iter % 10 == 0) {
            // exceptional shift to break cycles
            const double sub = std::abs(H(hi, hi - 1)) + (hi - 2 >= lo ? std::abs(H(hi - 1, hi - 2)) : 0.0);
            shift = H(hi, hi) + sub * Complex(0.75, -0.4375);
        } else {
            shift = wilkinson_shift(H, hi);
        }
        qr_sweep(H, lo, hi, shift);
    }
    return out;
}

Complex determinant(const ComplexMatrix& M) {
    if (M.rows() != M.cols()) throw ParameterError("determinant needs a square matrix");
    if (M.rows() == 0) return 1.0;
    return Eigen::PartialPivLU<ComplexMatrix>(M).determinant();
}

void sort_by_modulus_phase(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(), [](Complex p, Complex q) {
        const double mp = std::abs(p);
        const double mq = std::abs(q);
        if (mp != mq) return mp < mq;
        return std::arg(p) < std::arg(q);
    });
}

std::vector<std::pair<std::size_t, std::size_t>> match_multisets(const std::vector<Complex>& a,
                                                                 const std::vector<Complex>& b) {
    auto order_of = [](const std::vector<Complex>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) {
            const double mp = std::abs(v[p]);
            const double mq = std::abs(v[q]);
            if (mp != mq) return mp < mq;
            return std::arg(v[p]) < std::arg(v[q]);
        });
        return idx;
    };
    const auto ia = order_of(a);
    const auto ib = order_of(b);
    std::vector<bool> used(b.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(std::min(a.size(), b.size()));
    for (std::size_t p : ia) {
        std::size_t best = b.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t q : ib) {
            if (used[q]) continue;
            const double dist = std::abs(a[p] - b[q]);
            if (dist < best_dist) {
                best_dist = dist;
                best = q;
            }
        }
        if (best == b.size()) break;
        used[best] = true;
        pairs.emplace_back(p, best);
    }
    return pairs;
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& [p, q] : match_multisets(a, b)) {
        worst = std::max(worst, std::abs(a[p] - b[q]) / std::max(1.0, std::abs(b[q])));
    }
    return worst;
}

} // namespace ptfloquet
