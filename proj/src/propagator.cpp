#include "ptfloquet/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "ptfloquet/companion.hpp"
#include "ptfloquet/errors.hpp"

namespace ptfloquet {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (fifth minus fourth order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool all_finite(const ComplexMatrix& M) {
    return M.array().real().allFinite() && M.array().imag().allFinite();
}

} // namespace

void IntegratorSettings::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ParameterError("integrator tolerances must be positive");
    if (!(initial_step > 0.0)) throw ParameterError("initial step must be positive");
    if (max_steps < 1) throw ParameterError("max_steps must be at least 1");
}

IntegratorSettings IntegratorSettings::scaled(double factor) const {
    IntegratorSettings out = *this;
    out.rel_tol *= factor;
    out.abs_tol *= factor;
    return out;
}

ComplexMatrix integrate_ode(const MatrixRhs& rhs, ComplexMatrix state, double x_a, double x_b,
                            const IntegratorSettings& settings, double* step_hint) {
    settings.validate();
    if (x_a == x_b) return state;

    // Integrate in s = |x - x_a| so the scheme always steps forward.
    const double dir = x_b > x_a ? 1.0 : -1.0;
    const double length = std::abs(x_b - x_a);
    auto f = [&](double s, const ComplexMatrix& y, ComplexMatrix& dy) {
        rhs(x_a + dir * s, y, dy);
        dy *= dir;
    };

    const auto rows = state.rows();
    const auto cols = state.cols();
    ComplexMatrix k1(rows, cols), k2(rows, cols), k3(rows, cols), k4(rows, cols), k5(rows, cols),
        k6(rows, cols), k7(rows, cols), work(rows, cols), next(rows, cols);

    double h = std::min(step_hint && *step_hint > 0.0 ? *step_hint : settings.initial_step, length);
    double s = 0.0;
    long steps = 0;
    f(s, state, k1);

    while (s < length) {
        if (++steps > settings.max_steps) {
            throw IntegrationFailure("step budget of " + std::to_string(settings.max_steps) +
                                         " exhausted at x=" + std::to_string(x_a + dir * s),
                                     x_a + dir * s);
        }
        const bool last = s + h >= length;
        if (last) h = length - s;

        work = state + h * a21 * k1;
        f(s + c2 * h, work, k2);
        work = state + h * (a31 * k1 + a32 * k2);
        f(s + c3 * h, work, k3);
        work = state + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(s + c4 * h, work, k4);
        work = state + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(s + c5 * h, work, k5);
        work = state + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(s + h, work, k6);
        next = state + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(s + h, next, k7);

        work = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double sum = 0.0;
        for (Eigen::Index q = 0; q < work.size(); ++q) {
            const double scale = settings.abs_tol +
                                 settings.rel_tol * std::max(std::abs(state(q)), std::abs(next(q)));
            sum += std::norm(work(q)) / (scale * scale);
        }
        const double err = std::sqrt(sum / static_cast<double>(work.size()));

        if (!std::isfinite(err)) {
            if (!all_finite(next)) {
                throw DivergenceError("non-finite state at x=" + std::to_string(x_a + dir * s), x_a + dir * s);
            }
            h *= 0.2;
            continue;
        }

        if (err <= 1.0) {
            s = last ? length : s + h;
            state.swap(next);
            k1.swap(k7);
            if (!all_finite(state)) {
                throw DivergenceError("non-finite state at x=" + std::to_string(x_a + dir * s), x_a + dir * s);
            }
            if (step_hint && !last) *step_hint = h;
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= grow;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        if (s < length && h < 1e-15 * std::max(1.0, std::abs(x_a) + length)) {
            throw IntegrationFailure("step size underflow at x=" + std::to_string(x_a + dir * s), x_a + dir * s);
        }
    }
    return state;
}

MatrixRhs companion_rhs(const PeriodicCoefficients& set, Complex lambda) {
    // The closure owns its scratch so distinct integrations never share state.
    struct Scratch {
        std::vector<ComplexMatrix> P;
        ComplexMatrix A;
    };
    auto scratch = std::make_shared<Scratch>();
    return [&set, lambda, scratch](double x, const ComplexMatrix& y, ComplexMatrix& dy) {
        set.evaluate(x, scratch->P);
        assemble_companion(scratch->P, lambda, scratch->A);
        dy.noalias() = scratch->A * y;
    };
}

Monodromy integrate_fundamental(const PeriodicCoefficients& set, Complex lambda,
                                const IntegratorSettings& settings) {
    const int d = set.order() * set.dim();
    ComplexMatrix X = integrate_interval(set, lambda, 0.0, 1.0, ComplexMatrix::Identity(d, d), settings);
    return Monodromy{std::move(X), lambda, settings};
}

ComplexMatrix integrate_interval(const PeriodicCoefficients& set, Complex lambda, double x_a, double x_b,
                                 const ComplexMatrix& M0, const IntegratorSettings& settings) {
    const int d = set.order() * set.dim();
    if (M0.rows() != d) throw ParameterError("initial matrix must have " + std::to_string(d) + " rows");
    return integrate_ode(companion_rhs(set, lambda), M0, x_a, x_b, settings);
}

ComplexMatrix canonical_boundary_matrix(const PeriodicCoefficients& set, Complex lambda, double t,
                                        const IntegratorSettings& settings) {
    const int n = set.order();
    const int m = set.dim();

    // State rows hold (Y, Y', ..., Y^(n-1)) of one m x m matrix solution.
    std::vector<ComplexMatrix> P;
    auto rhs = [&](double x, const ComplexMatrix& Y, ComplexMatrix& dY) {
        set.evaluate(x, P);
        dY.resize(Y.rows(), Y.cols());
        for (int nu = 0; nu + 1 < n; ++nu) dY.middleRows(nu * m, m) = Y.middleRows((nu + 1) * m, m);
        auto top = dY.middleRows((n - 1) * m, m);
        top = ipow(-n) * (lambda * Y.topRows(m) - P[n - 1] * Y.topRows(m));
        for (int k = 1; k < n; ++k) top -= ipow(-k) * (P[k - 1] * Y.middleRows((n - k) * m, m));
    };

    ComplexMatrix D(n * m, n * m);
    for (int j = 0; j < n; ++j) {
        ComplexMatrix Y0 = ComplexMatrix::Zero(n * m, m);
        Y0.middleRows(j * m, m).setIdentity();
        ComplexMatrix Y1 = integrate_ode(rhs, Y0, 0.0, 1.0, settings);
        D.middleCols(j * m, m) = Y1 - std::polar(1.0, t) * Y0;
    }
    return D;
}

Trajectory trajectory(const PeriodicCoefficients& set, Complex lambda, const ComplexVector& init, double x_a,
                      double x_b, int N, const IntegratorSettings& settings) {
    if (N < 2) throw ParameterError("trajectory needs at least 2 samples");
    const int d = set.order() * set.dim();
    if (init.size() != d) throw ParameterError("initial state must have " + std::to_string(d) + " components");

    Trajectory out;
    out.x.reserve(N);
    out.states.reserve(N);
    const auto rhs = companion_rhs(set, lambda);
    ComplexMatrix state = init;
    double hint = settings.initial_step;
    double prev = x_a;
    out.x.push_back(x_a);
    out.states.push_back(init);
    for (int s = 1; s < N; ++s) {
        const double x = s + 1 == N ? x_b : x_a + (x_b - x_a) * static_cast<double>(s) / (N - 1);
        state = integrate_ode(rhs, std::move(state), prev, x, settings, &hint);
        out.x.push_back(x);
        out.states.push_back(state.col(0));
        prev = x;
    }
    return out;
}

} // namespace ptfloquet
