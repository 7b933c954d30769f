#include "kratzer/ode.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kratzer/errors.hpp"

namespace kratzer::ode {
namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
        out[i] += h * acc;
    }
    return out;
}

}  // namespace

Dopri5::Dopri5(Rhs rhs, Tolerances tol) : rhs_(std::move(rhs)), tol_(tol) {}

double Dopri5::error_norm(const State& y, const State& y_new, const State& err) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double scale = tol_.abs + tol_.rel * std::max(std::abs(y[i]), std::abs(y_new[i]));
        const double e = err[i] == 0.0 ? 0.0 : std::abs(err[i]) / scale;
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(y.size()));
}

void Dopri5::advance(double& t, State& y, double t_end) {
    if (t == t_end) return;
    const double direction = t_end > t ? 1.0 : -1.0;
    const double span = std::abs(t_end - t);
    if (h_ == 0.0) h_ = 1e-3 * std::max(span, 1e-3);

    State k1 = rhs_(t, y);
    ++stats_.evaluations;

    while ((t_end - t) * direction > 0.0) {
        if (stats_.accepted + stats_.rejected > max_steps_)
            throw StiffnessError("step budget exhausted at t = " + std::to_string(t));

        double h = std::min(std::abs(h_), std::abs(t_end - t));
        const bool last = h == std::abs(t_end - t);
        h *= direction;
        if (std::abs(h) < 1e-13 * std::max(1.0, std::abs(t)) && !last)
            throw StiffnessError("step size collapsed at t = " + std::to_string(t));

        const State k2 = rhs_(t + c2 * h, axpy(y, h, {{a21, &k1}}));
        const State k3 = rhs_(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs_(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs_(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            rhs_(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs_(t + h, y_new);
        stats_.evaluations += 6;

        const State err = axpy(State{}, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});
        const double norm = error_norm(y, y_new, err);
        if (!std::isfinite(norm)) {
            ++stats_.rejected;
            h_ = 0.1 * h;
            continue;
        }

        const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        if (norm <= 1.0) {
            ++stats_.accepted;
            t = last ? t_end : t + h;
            y = y_new;
            k1 = k7;
            // Keep the pre-truncation step size when the last step was clipped to t_end.
            if (!last) h_ = h * factor;
        } else {
            ++stats_.rejected;
            h_ = h * std::min(factor, 1.0);
        }
    }
}

}  // namespace kratzer::ode
