#include "kratzer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "kratzer/errors.hpp"
#include "kratzer/quadrature.hpp"
#include "kratzer/spectrum.hpp"

namespace kratzer {
namespace {

// Integrand R(r)^2 r^2 g(r), where g(r) is supplied as ln|g| plus an optional
// sign factor so that the huge powers of r never leave log space.
struct Weight {
    int inverse_power;  // most singular power of 1/r in g
    std::function<double(double r, double log_r2R2)> eval;
};

Estimate integrate(const RadialState& state, const Weight& w, const QuadratureSpec& spec, const char* what) {
    validate(spec);
    const double lam = state.shape.lambda;
    if (!(2.0 * lam - w.inverse_power > -1.0))
        throw InvalidInput(std::string(what) + ": integrand is not integrable at the origin (2 lambda - p = "
                           + std::to_string(2.0 * lam - w.inverse_power) + ")");

    auto at_r = [&](double r) {
        const LogMagnitude lm = radial_log(state, r);
        if (lm.sign == 0) return 0.0;
        return w.eval(r, 2.0 * lm.log_abs + 2.0 * std::log(r));
    };

    if (spec.scheme == QuadratureScheme::adaptive) {
        const double rc = (lam + state.qn.n) / state.decay_rate();
        auto f = [&](double t) {
            if (t <= 0.0 || t >= 1.0) return 0.0;
            const double one_minus = 1.0 - t;
            const double r = rc * t / one_minus;
            return at_r(r) * rc / (one_minus * one_minus);
        };
        const quad::Result res = quad::gauss_kronrod(f, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_intervals);
        if (!res.converged || !std::isfinite(res.value))
            throw ConvergenceError(std::string(what) + ": adaptive quadrature did not converge", res.value,
                                   res.error);
        return {res.value, res.error};
    }

    // x = 2 kappa r; the weight x^a e^-x absorbs the exponential and the
    // leading power, leaving a polynomial of degree 2n + p.
    const double kappa = state.decay_rate();
    const double a = 2.0 * lam - w.inverse_power;
    auto rule_sum = [&](int order) {
        const quad::LaguerreRule rule = quad::gauss_laguerre(order, a);
        double sum = 0.0, comp = 0.0;
        for (int i = 0; i < order; ++i) {
            const double x = rule.nodes[i];
            const double r = x / (2.0 * kappa);
            const LogMagnitude lm = radial_log(state, r);
            if (lm.sign == 0) continue;
            const double log_r2R2 = 2.0 * lm.log_abs + 2.0 * std::log(r);
            const double shift = rule.log_weights[i] - a * std::log(x) + x - std::log(2.0 * kappa);
            const double term = w.eval(r, log_r2R2 + shift);
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    };
    const double hi = rule_sum(spec.order + 8);
    const double lo = rule_sum(spec.order);
    const double err = std::abs(hi - lo);
    if (!std::isfinite(hi) || err > std::max(spec.abs_tol, spec.rel_tol * std::abs(hi)))
        throw ConvergenceError(std::string(what) + ": Gauss-Laguerre orders disagree", hi, err);
    return {hi, err};
}

}  // namespace

void validate(const QuadratureSpec& spec) {
    if (!(spec.rel_tol >= 1e-12)) throw InvalidInput("quadrature rel_tol must be at least 1e-12");
    if (!(spec.abs_tol >= 0.0)) throw InvalidInput("quadrature abs_tol must be non-negative");
    if (spec.max_intervals < 1 || spec.order < 1) throw InvalidInput("quadrature budget must be positive");
}

Estimate expectation_inverse_power(int p, const RadialState& state, const QuadratureSpec& spec) {
    if (p < 0 || p > 4) throw InvalidInput("inverse power must be in 0..4, got " + std::to_string(p));
    const Weight w{p, [p](double r, double log_r2R2) { return std::exp(log_r2R2 - p * std::log(r)); }};
    return integrate(state, w, spec, "expectation_inverse_power");
}

Estimate overlap(const RadialState& a, const RadialState& b, const QuadratureSpec& spec) {
    validate(spec);
    if (a.re != b.re) throw InvalidInput("overlap: states use different length scales");
    const double rc = std::max((a.shape.lambda + a.qn.n) / a.decay_rate(), (b.shape.lambda + b.qn.n) / b.decay_rate());
    auto f = [&](double t) {
        if (t <= 0.0 || t >= 1.0) return 0.0;
        const double one_minus = 1.0 - t;
        const double r = rc * t / one_minus;
        const LogMagnitude la = radial_log(a, r);
        const LogMagnitude lb = radial_log(b, r);
        if (la.sign == 0 || lb.sign == 0) return 0.0;
        return la.sign * lb.sign * std::exp(la.log_abs + lb.log_abs + 2.0 * std::log(r)) * rc / (one_minus * one_minus);
    };
    const quad::Result res = quad::gauss_kronrod(f, 0.0, 1.0, spec.rel_tol, std::max(spec.abs_tol, 1e-12),
                                                 spec.max_intervals);
    if (!res.converged || !std::isfinite(res.value))
        throw ConvergenceError("overlap: adaptive quadrature did not converge", res.value, res.error);
    return {res.value, res.error};
}

Estimate expectation_potential(const RadialState& state, const KratzerCouplings& c, const QuadratureSpec& spec) {
    const Weight w{2, [c](double r, double log_r2R2) {
                       return std::exp(log_r2R2) * (c.g1 / (r * r) - c.g2 / r);
                   }};
    return integrate(state, w, spec, "expectation_potential");
}

Estimate expectation_potential_sq(const RadialState& state, const KratzerCouplings& c,
                                  const QuadratureSpec& spec) {
    const Weight w{4, [c](double r, double log_r2R2) {
                       const double v = c.g1 / (r * r) - c.g2 / r;
                       return std::exp(log_r2R2) * v * v;
                   }};
    return integrate(state, w, spec, "expectation_potential_sq");
}

double correction_via_expectations(const RadialState& state, const KratzerCouplings& c, double mu_kg, double beta,
                                   const QuadratureSpec& spec) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be finite and non-negative");
    if (!(mu_kg > 0.0)) throw InvalidInput("mass must be positive");
    const double e0 = energy_unperturbed(c, mu_kg, state.qn);
    const double v = expectation_potential(state, c, spec).value;
    const double v2 = expectation_potential_sq(state, c, spec).value;
    return 4.0 * beta * mu_kg * (e0 * e0 - 2.0 * e0 * v + v2);
}

}  // namespace kratzer
