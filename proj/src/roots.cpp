#include "ptfloquet/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ptfloquet/errors.hpp"
#include "ptfloquet/spectrum.hpp"

namespace ptfloquet {

namespace {

// Off-centre split points; the first is tried before the others.
constexpr std::array<double, 4> kSplitFractions{0.5173, 0.4627, 0.5419, 0.4381};

class ContourWalker {
public:
    ContourWalker(const AnalyticFunction& f, const RootFinderSettings& settings) : f_(f), settings_(settings) {}

    int winding(const Rectangle& rect) {
        if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) {
            throw ParameterError("contour rectangle must be nondegenerate");
        }
        min_abs_ = std::numeric_limits<double>::infinity();
        max_abs_ = 0.0;
        const std::array<Complex, 5> corners{Complex(rect.re_min, rect.im_min), Complex(rect.re_max, rect.im_min),
                                             Complex(rect.re_max, rect.im_max), Complex(rect.re_min, rect.im_max),
                                             Complex(rect.re_min, rect.im_min)};
        double total = 0.0;
        Complex z0 = corners[0];
        Complex f0 = sample(z0);
        for (int edge = 0; edge < 4; ++edge) {
            const Complex a = corners[edge];
            const Complex b = corners[edge + 1];
            const int segments = std::max(settings_.min_edge_samples,
                                          static_cast<int>(std::ceil(std::abs(b - a) / settings_.max_sample_spacing)));
            for (int s = 1; s <= segments; ++s) {
                const Complex z1 = s == segments ? b : a + (b - a) * (static_cast<double>(s) / segments);
                const Complex f1 = sample(z1);
                total += segment_phase(z0, f0, z1, f1, 0);
                z0 = z1;
                f0 = f1;
            }
        }
        if (min_abs_ <= settings_.zero_guard * max_abs_) {
            throw ContourFailure("function vanishes on the contour (|f|=" + std::to_string(min_abs_) + ")");
        }
        const double turns = total / kTwoPi;
        const double rounded = std::round(turns);
        if (std::abs(turns - rounded) > 0.1) {
            throw ContourFailure("phase continuation did not close (" + std::to_string(turns) + " turns)");
        }
        return static_cast<int>(rounded);
    }

private:
    Complex sample(Complex z) {
        const Complex v = f_(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ContourFailure("non-finite function value on the contour");
        }
        const double r = std::abs(v);
        if (r == 0.0) throw ContourFailure("exact zero on the contour");
        min_abs_ = std::min(min_abs_, r);
        max_abs_ = std::max(max_abs_, r);
        return v;
    }

    double segment_phase(Complex z0, Complex f0, Complex z1, Complex f1, int depth) {
        const double dphi = std::arg(f1 / f0);
        if (std::abs(dphi) <= 0.5 * kPi) return dphi;
        if (depth >= settings_.max_bisections) {
            throw ContourFailure("phase jump unresolved near z=(" + std::to_string(z0.real()) + "," +
                                 std::to_string(z0.imag()) + "); zero on or near the contour");
        }
        const Complex zm = 0.5 * (z0 + z1);
        const Complex fm = sample(zm);
        return segment_phase(z0, f0, zm, fm, depth + 1) + segment_phase(zm, fm, z1, f1, depth + 1);
    }

    const AnalyticFunction& f_;
    const RootFinderSettings& settings_;
    double min_abs_ = 0.0;
    double max_abs_ = 0.0;
};

struct NewtonResult {
    Complex z;
    double residual;
    bool converged;
};

NewtonResult newton(const AnalyticFunction& f, Complex z, const Rectangle& cell, const RootFinderSettings& settings) {
    const double reach = std::max(cell.width(), cell.height());
    Complex fz = f(z);
    for (int it = 0; it < settings.newton_max_iter; ++it) {
        if (std::abs(fz) == 0.0) return {z, 0.0, true};
        const double h = settings.fd_step * std::max(1.0, std::abs(z));
        const Complex deriv = (f(z + h) - f(z - h)) / (2.0 * h);
        if (std::abs(deriv) == 0.0 || !std::isfinite(std::abs(deriv))) break;
        const Complex step = fz / deriv;
        const Complex candidate = z - step;
        if (!cell.contains(candidate, reach)) break;
        const Complex fc = f(candidate);
        const double scale = std::max(1.0, std::abs(candidate));
        // At the noise floor |f| stops decreasing; keep the better iterate.
        if (std::abs(fc) >= std::abs(fz) && std::abs(step) <= 1e-10 * scale) return {z, std::abs(fz), true};
        z = candidate;
        fz = fc;
        if (std::abs(step) <= 4e-16 * scale) return {z, std::abs(fz), true};
    }
    return {z, std::abs(fz), false};
}

class Subdivider {
public:
    Subdivider(const AnalyticFunction& f, const RootFinderSettings& settings)
        : f_(f), settings_(settings), walker_(f, settings) {}

    void solve(const Rectangle& cell, int count, int depth, std::vector<LocatedRoot>& out) {
        if (count == 0) return;
        const double diameter = std::hypot(cell.width(), cell.height());
        const bool tiny = diameter <= settings_.merge_tol || depth >= settings_.max_depth;
        if (count == 1 || tiny) {
            const Complex centre(0.5 * (cell.re_min + cell.re_max), 0.5 * (cell.im_min + cell.im_max));
            const auto nr = newton(f_, centre, cell, settings_);
            const double margin = 1e-12 * std::max(1.0, std::abs(centre));
            if (nr.converged && cell.contains(nr.z, margin)) {
                out.push_back({nr.z, nr.residual, count, nr.residual <= settings_.residual_tol});
                return;
            }
            if (tiny) {
                out.push_back({centre, std::abs(f_(centre)), count, false});
                return;
            }
        }
        split(cell, count, depth, out);
    }

private:
    void split(const Rectangle& cell, int count, int depth, std::vector<LocatedRoot>& out) {
        const bool along_re = cell.width() >= cell.height();
        for (double frac : kSplitFractions) {
            Rectangle lo = cell;
            Rectangle hi = cell;
            if (along_re) {
                const double cut = cell.re_min + frac * cell.width();
                lo.re_max = cut;
                hi.re_min = cut;
            } else {
                const double cut = cell.im_min + frac * cell.height();
                lo.im_max = cut;
                hi.im_min = cut;
            }
            int c_lo = 0;
            int c_hi = 0;
            try {
                c_lo = walker_.winding(lo);
                c_hi = walker_.winding(hi);
            } catch (const ContourFailure&) {
                continue;
            }
            if (c_lo < 0 || c_hi < 0 || c_lo + c_hi != count) continue;
            solve(lo, c_lo, depth + 1, out);
            solve(hi, c_hi, depth + 1, out);
            return;
        }
        // No consistent split (a zero hugs every candidate cut): settle for
        // Newton from the centre and carry the cell's count as multiplicity.
        const Complex centre(0.5 * (cell.re_min + cell.re_max), 0.5 * (cell.im_min + cell.im_max));
        const auto nr = newton(f_, centre, cell, settings_);
        const double reach = std::hypot(cell.width(), cell.height());
        if (nr.converged && cell.contains(nr.z, reach)) {
            out.push_back({nr.z, nr.residual, count, nr.residual <= settings_.residual_tol});
        } else {
            out.push_back({centre, std::abs(f_(centre)), count, false});
        }
    }

    const AnalyticFunction& f_;
    const RootFinderSettings& settings_;
    ContourWalker walker_;
};

std::vector<LocatedRoot> merge_close(std::vector<LocatedRoot> roots, double merge_tol) {
    std::sort(roots.begin(), roots.end(), [](const LocatedRoot& p, const LocatedRoot& q) {
        if (p.z.real() != q.z.real()) return p.z.real() < q.z.real();
        return p.z.imag() < q.z.imag();
    });
    std::vector<LocatedRoot> merged;
    for (const auto& r : roots) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const LocatedRoot& m) { return std::abs(m.z - r.z) < merge_tol; });
        if (it == merged.end()) {
            merged.push_back(r);
        } else {
            it->multiplicity += r.multiplicity;
            if (r.residual < it->residual) {
                it->z = r.z;
                it->residual = r.residual;
            }
            it->refined = it->refined && r.refined;
        }
    }
    return merged;
}

} // namespace

int winding_number(const AnalyticFunction& f, const Rectangle& rect, const RootFinderSettings& settings) {
    ContourWalker walker(f, settings);
    return walker.winding(rect);
}

ZeroSearch find_zeros(const AnalyticFunction& f, const Rectangle& rect, const RootFinderSettings& settings) {
    if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) {
        throw ParameterError("search rectangle must be nondegenerate");
    }
    ZeroSearch search;
    search.region = rect;
    ContourWalker walker(f, settings);
    const double size = std::max(rect.width(), rect.height());
    for (int attempt = 0;; ++attempt) {
        try {
            search.winding = walker.winding(search.region);
            break;
        } catch (const ContourFailure& e) {
            if (attempt >= settings.contour_retries) {
                throw ContourFailure(std::string("outer contour failed after ") + std::to_string(attempt) +
                                     " perturbation retries: " + e.what());
            }
            // Push the contour outward by a growing, irregular amount.
            const double delta = 1e-4 * size * (attempt + 1) * (1.0 + 0.173 * attempt);
            search.region = Rectangle{rect.re_min - delta, rect.re_max + delta, rect.im_min - delta,
                                      rect.im_max + delta};
            search.retries = attempt + 1;
        }
    }
    if (search.winding < 0) throw ContourFailure("negative winding number for an analytic function");

    Subdivider subdivider(f, settings);
    std::vector<LocatedRoot> roots;
    subdivider.solve(search.region, search.winding, 0, roots);
    search.roots = merge_close(std::move(roots), settings.merge_tol);
    return search;
}

TtEigenvalues tt_eigenvalues(const PeriodicCoefficients& set, double t, const Rectangle& rect,
                             const IntegratorSettings& settings, const RootFinderSettings& roots) {
    if (!(t >= 0.0 && t < kTwoPi)) throw ParameterError("quasimomentum t must lie in [0, 2 pi)");
    settings.validate();
    const AnalyticFunction f = [&](Complex lambda) { return char_det(set, lambda, t, settings); };
    auto search = find_zeros(f, rect, roots);
    return TtEigenvalues{t, search.region, search.winding, search.retries, std::move(search.roots)};
}

} // namespace ptfloquet
