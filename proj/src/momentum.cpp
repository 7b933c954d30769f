#include "kratzer/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "kratzer/errors.hpp"
#include "kratzer/ode.hpp"

namespace kratzer {
namespace {

constexpr cplx I{0.0, 1.0};

void require_k(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("k must be positive");
}

void require_beta(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be finite and non-negative");
}

cplx coef(const std::array<cplx, 5>& c, int i) { return i >= 0 && i < 5 ? c[i] : cplx{}; }

// Checks the grid is uniform in ln p and returns the step.
double uniform_log_step(const OdeSolution& sol) {
    const std::size_t n = sol.grid.size();
    if (n < 5 || sol.values.size() != n || sol.derivs.size() != n)
        throw InvalidInput("heun_residual: need at least 5 grid points with values and derivatives");
    const double h = std::log(sol.grid[1] / sol.grid[0]);
    if (!(h > 0.0) || h > 0.05) throw InvalidInput("heun_residual: grid too coarse for finite differences");
    for (std::size_t i = 1; i < n; ++i) {
        const double hi = std::log(sol.grid[i] / sol.grid[i - 1]);
        if (std::abs(hi - h) > 1e-6 * h) throw InvalidInput("heun_residual: grid is not uniform in ln p");
    }
    return h;
}

// Walks the interior points; `first(i)` is dF/dp at grid point i and
// `eval(i, dF/dp, d2F/dp2)` returns the normalized residual there.
template <typename First, typename Eval>
double max_residual(const OdeSolution& sol, First first, Eval eval) {
    const double h = uniform_log_step(sol);
    const std::size_t n = sol.grid.size();
    std::vector<cplx> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = first(i);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const cplx du = (-g[i + 2] + 8.0 * g[i + 1] - 8.0 * g[i - 1] + g[i - 2]) / (12.0 * h);
        worst = std::max(worst, eval(i, g[i], du / sol.grid[i]));
    }
    return worst;
}

double normalized(cplx t1, cplx t2, cplx t3) {
    const double den = std::abs(t1) + std::abs(t2) + std::abs(t3);
    return den == 0.0 ? 0.0 : std::abs(t1 + t2 + t3) / den;
}

}  // namespace

MomentumProblem momentum_problem(const KratzerCouplings& c, double mu_kg, double energy_j, double beta) {
    if (!(mu_kg > 0.0)) throw InvalidInput("mass must be positive");
    if (!(energy_j < 0.0)) throw InvalidInput("momentum problem needs a bound-state energy E < 0");
    require_beta(beta);
    return {sigma1_of(c, mu_kg), sigma2_of(c, mu_kg), std::sqrt(-2.0 * mu_kg * energy_j), beta};
}

std::string_view branch_name(Branch b) { return b == Branch::fast_decay ? "fast-decay" : "slow-decay"; }

IntegrationRange default_range(const MomentumProblem& prob) {
    require_k(prob.k);
    require_beta(prob.beta);
    IntegrationRange r;
    const double scale = prob.beta > 0.0 ? std::max(prob.k, 1.0 / std::sqrt(6.0 * prob.beta)) : prob.k;
    r.p_max = 1e3 * scale;
    r.p_min = 1e-3 * prob.k;
    return r;
}

cplx ode_rhs_deformed(const MomentumProblem& prob, double p, cplx phi, cplx dphi) {
    if (!(p > 0.0)) throw InvalidInput("ode_rhs_deformed: p must be positive");
    const double b = prob.beta;
    const double k2 = prob.k * prob.k;
    const double p2 = p * p;
    const double A = (p2 + k2) * (1.0 + 6.0 * b * p2);
    const cplx B = 2.0 * b * p * (p2 + k2) + 4.0 * p * (1.0 + 6.0 * b * p2) + 2.0 * I * prob.sigma2 * (1.0 + 3.0 * b * p2);
    const cplx C = 4.0 * (1.0 + 7.0 * b * p2) - 2.0 * b * (p2 + k2) - 2.0 * (1.0 + 6.0 * b * p2)
                   - 4.0 * I * b * prob.sigma2 * p - prob.sigma1;
    return -(B * dphi + C * phi) / A;
}

PhiEquation phi_equation(const MomentumProblem& prob) {
    const double b = prob.beta;
    const double k2 = prob.k * prob.k;
    const double s2 = prob.sigma2;
    PhiEquation eq;
    eq.A = {k2, 0.0, 1.0 + 6.0 * b * k2, 0.0, 6.0 * b};
    eq.B = {2.0 * I * s2, 4.0 + 2.0 * b * k2, 6.0 * I * b * s2, 26.0 * b, 0.0};
    eq.C = {2.0 - 2.0 * b * k2 - prob.sigma1, -4.0 * I * b * s2, 14.0 * b, 0.0, 0.0};
    return eq;
}

std::array<cplx, 2> indicial_exponents(const MomentumProblem& prob, Regime regime) {
    if (regime == Regime::deformed) return {cplx(-10.0 / 3.0), cplx(-2.0)};
    const cplx nu = index_nu(prob.sigma1).value();
    return {-2.5 - nu, -2.5 + nu};
}

std::array<cplx, 2> asymptotic_series(const MomentumProblem& prob, cplx s, double p) {
    if (!(p > 0.0)) throw InvalidInput("asymptotic_series: p must be positive");
    const PhiEquation eq = phi_equation(prob);
    const int top = prob.beta > 0.0 ? 2 : 0;
    const int dmax = top + 2;
    auto L = [&](int d, cplx sig) {
        return coef(eq.A, top + 2 - d) * sig * (sig - 1.0) + coef(eq.B, top + 1 - d) * sig + coef(eq.C, top - d);
    };

    // d_j = c_j p^-j with c_0 = 1.
    std::vector<cplx> d{1.0};
    cplx sum = 1.0;
    cplx dsum = s;  // p dphi/dp relative to p^s
    const double l0_scale = std::abs(L(0, s)) + std::abs(coef(eq.A, top + 2)) + 1.0;
    int quiet = 0;
    for (int J = 1; J <= 200; ++J) {
        const cplx l0 = L(0, s - double(J));
        if (std::abs(l0) < 1e-10 * l0_scale * (1.0 + J * J)) break;  // resonance
        cplx acc = 0.0;
        double pinv = 1.0;
        for (int k = 1; k <= std::min(J, dmax); ++k) {
            pinv /= p;
            acc += d[J - k] * pinv * L(k, s - double(J) + double(k));
        }
        const cplx next = -acc / l0;
        if (J > 3 && std::abs(next) > std::abs(d.back()) && std::abs(d.back()) > 0.0) break;  // asymptotic, stop
        d.push_back(next);
        sum += next;
        dsum += next * (s - double(J));
        if (std::abs(next) < 1e-17 * std::abs(sum)) {
            if (++quiet >= dmax) break;
        } else {
            quiet = 0;
        }
    }
    return {sum, dsum};
}

OdeSolution integrate_from(const MomentumProblem& prob, cplx phi, cplx dphi, const IntegrationRange& range,
                           Branch label) {
    require_k(prob.k);
    require_beta(prob.beta);
    if (!(range.p_min > 0.0) || !(range.p_max > range.p_min))
        throw InvalidInput("integration range needs 0 < p_min < p_max");
    if (range.points_per_decade < 1) throw InvalidInput("points_per_decade must be positive");

    const double umax = std::log(range.p_max);
    const double umin = std::log(range.p_min);
    const double decades = (umax - umin) / std::log(10.0);
    const int steps = std::max(4, static_cast<int>(std::ceil(decades * range.points_per_decade)));
    const double du = (umax - umin) / steps;

    ode::Dopri5 solver(
        [&prob](double u, const ode::State& y) {
            const double p = std::exp(u);
            const cplx phipp = ode_rhs_deformed(prob, p, y[0], y[1] / p);
            return ode::State{y[1], y[1] + p * p * phipp};
        },
        ode::Tolerances{range.rel_tol, 0.0});

    OdeSolution sol;
    sol.branch = label;
    sol.points_per_decade = steps / decades;
    sol.grid.resize(steps + 1);
    sol.values.resize(steps + 1);
    sol.derivs.resize(steps + 1);

    double u = umax;
    ode::State y{phi, range.p_max * dphi};
    for (int i = 0; i <= steps; ++i) {
        const double target = i == steps ? umin : umax - i * du;
        solver.advance(u, y, target);
        const double p = std::exp(target);
        const std::size_t slot = static_cast<std::size_t>(steps - i);
        const cplx psi = y[0] / p;
        sol.grid[slot] = p;
        sol.values[slot] = psi;
        sol.derivs[slot] = (y[1] / p - psi) / p;
    }
    return sol;
}

OdeSolution integrate_branch(const MomentumProblem& prob, Branch branch, const IntegrationRange& range) {
    require_k(prob.k);
    require_beta(prob.beta);
    if (!(range.p_min > 0.0) || !(range.p_max >= 1e3 * range.p_min * (1.0 - 1e-12)))
        throw InvalidInput("integration range must span at least three decades");
    const Regime regime = prob.beta > 0.0 ? Regime::deformed : Regime::undeformed;
    const auto exps = indicial_exponents(prob, regime);
    const cplx s_phi = exps[branch == Branch::fast_decay ? 0 : 1] + 1.0;
    const auto ser = asymptotic_series(prob, s_phi, range.p_max);
    // Normalized so that phi(p_max) is the truncated series relative to its leading term.
    return integrate_from(prob, ser[0], ser[1] / range.p_max, range, branch);
}

OdeSolution integrate_branch(const MomentumProblem& prob, Branch branch) {
    return integrate_branch(prob, branch, default_range(prob));
}

double fit_loglog_slope(const OdeSolution& sol, double p_lo, double p_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double p = sol.grid[i];
        if (p < p_lo || p > p_hi) continue;
        const double a = std::abs(sol.values[i]);
        if (!(a > 0.0) || !std::isfinite(a)) continue;
        const double x = std::log(p), y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) throw InvalidInput("fit_loglog_slope: fewer than 3 usable points in the window");
    const double den = n * sxx - sx * sx;
    if (!(den > 0.0)) throw InvalidInput("fit_loglog_slope: degenerate window");
    return (n * sxy - sx * sy) / den;
}

double fit_top_decade_slope(const OdeSolution& sol) {
    if (sol.grid.empty()) throw InvalidInput("fit_top_decade_slope: empty solution");
    const double hi = sol.grid.back();
    return fit_loglog_slope(sol, hi / 10.0 * (1.0 - 1e-12), hi);
}

RegularizationReport regularization_witness(double sigma1) {
    RegularizationReport rep;
    rep.sigma1 = sigma1;
    MomentumProblem prob;
    prob.sigma1 = sigma1;
    rep.deformed = indicial_exponents(prob, Regime::deformed);
    rep.undeformed = indicial_exponents(prob, Regime::undeformed);
    rep.deformed_gap = (rep.deformed[1] - rep.deformed[0]).real();
    rep.deformed_unique = rep.deformed_gap > 0.0;
    rep.undeformed_boundary = std::abs(sigma1 + 0.25) <= 1e-12;
    rep.undeformed_complex = !rep.undeformed_boundary && sigma1 < -0.25;
    rep.undeformed_unique = !rep.undeformed_boundary && !rep.undeformed_complex;

    std::ostringstream os;
    os << "sigma1 = " << sigma1 << ": deformed exponents -10/3 and -2 (gap 4/3), fast branch selected uniquely; ";
    if (rep.undeformed_boundary)
        os << "undeformed exponents degenerate at -5/2 (boundary sigma1 = -1/4), no unique selection";
    else if (rep.undeformed_complex)
        os << "undeformed exponents complex (-5/2 +- " << std::abs(rep.undeformed[1].imag())
           << " i), both decay alike, no unique selection";
    else
        os << "undeformed exponents " << rep.undeformed[0].real() << " and " << rep.undeformed[1].real()
           << ", fast branch selected uniquely";
    rep.summary = os.str();
    return rep;
}

std::vector<SwaveLevel> quantize_swave(const MomentumProblem& prob, double mu, int n_max) {
    if (!(prob.sigma1 > -0.25)) throw InvalidInput("s-wave quantization needs sigma1 > -1/4 (real nu)");
    if (!(prob.sigma2 > 0.0)) throw InvalidInput("s-wave quantization needs sigma2 > 0");
    if (!(mu > 0.0)) throw InvalidInput("mass must be positive");
    if (n_max < 0) throw InvalidInput("n_max must be non-negative");
    const double nu = index_nu(prob.sigma1).magnitude;
    std::vector<SwaveLevel> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double k = prob.sigma2 / (n + 0.5 + nu);
        out.push_back({n, k, -k * k / (2.0 * mu)});
    }
    return out;
}

HeunParams heun_params_general(const MomentumProblem& prob, HeunVariant variant) {
    if (!(prob.beta > 0.0)) throw InvalidInput("generalized Heun form needs beta > 0");
    require_k(prob.k);
    const double b = prob.beta;
    const double k = prob.k;
    const double eps = std::sqrt(6.0 * b);
    const double den = 1.0 - 6.0 * b * k * k;
    if (std::abs(den) < 1e-12) throw PoleError("generalized Heun form: 1 - 6 beta k^2 vanishes");

    const bool dim = variant == HeunVariant::dimensional;
    const double s_coupled = dim ? prob.sigma2 : prob.sigma1;
    const double s_rho2_eps = dim ? prob.sigma2 : prob.sigma1;
    const double s_rho2_const = dim ? prob.sigma1 : prob.sigma2;

    HeunParams h;
    h.variant = variant;
    h.sqrt6beta = eps;
    h.a = 1.0;
    h.b = 7.0 / 3.0;
    h.c = 1.0 / 6.0 + 0.5 * s_coupled * eps / den;
    h.d = 1.0 / 6.0 - 0.5 * s_coupled * eps / den;
    h.e = 2.0 + s_coupled / k * (1.0 - 3.0 * b * k * k) / den;
    h.f = 2.0 - s_coupled / k * (1.0 - 3.0 * b * k * k) / den;
    h.rho1 = -7.0 / 3.0 - s_coupled * eps / 3.0;
    h.rho2 = 0.5 * b * k * k + s_rho2_eps * eps / 6.0 + 1.0 / 12.0 + 0.25 * s_rho2_const;
    h.z1 = 0.5 + 0.5 * k * eps;
    h.z2 = 0.5 - 0.5 * k * eps;
    return h;
}

HeunParamsIS heun_params_inverse_square(double sigma1, double mu, double energy, double beta) {
    if (!(beta > 0.0)) throw InvalidInput("Heun form needs beta > 0");
    if (!(mu > 0.0)) throw InvalidInput("mass must be positive");
    if (!(energy < 0.0)) throw InvalidInput("Heun form needs a bound-state energy E < 0");
    const double den = 1.0 + 12.0 * mu * beta * energy;
    if (std::abs(den) < 1e-12) throw PoleError("Heun form: 1 + 12 mu beta E vanishes");
    HeunParamsIS h;
    h.a = 11.0 / 6.0;
    h.b = 1.0;
    h.c = 1.5;
    h.d = 1.0 / 3.0;
    h.e = 2.0;
    h.q = -1.5 + 0.25 * sigma1 / den;
    h.xi0 = 12.0 * mu * beta * energy / den;
    h.beta = beta;
    return h;
}

HypergeometricParams hypergeometric_params(const MomentumProblem& prob) {
    require_k(prob.k);
    const cplx nu = index_nu(prob.sigma1).value();
    return {1.5 + nu, 1.5 - nu, cplx(2.0 + prob.sigma2 / prob.k), prob.k};
}

double heun_residual(const HeunParams& hp, const OdeSolution& sol) {
    // phi = p psi as a function of z = (1 - i eps p)/2.
    const cplx dzdp = -0.5 * I * hp.sqrt6beta;
    return max_residual(
        sol, [&](std::size_t i) { return sol.values[i] + sol.grid[i] * sol.derivs[i]; },
        [&](std::size_t i, cplx fp, cplx fpp) {
            const double p = sol.grid[i];
            const cplx z = 0.5 - 0.5 * I * hp.sqrt6beta * p;
            const cplx f = p * sol.values[i];
            const cplx fz = fp / dzdp;
            const cplx fzz = fpp / (dzdp * dzdp);
            const cplx P = hp.c / z + hp.d / (z - 1.0) + hp.e / (z - hp.z1) + hp.f / (z - hp.z2);
            const cplx Q = (hp.a * hp.b * z * z + hp.rho1 * z + hp.rho2) / (z * (z - 1.0) * (z - hp.z1) * (z - hp.z2));
            return normalized(fzz, P * fz, Q * f);
        });
}

double heun_residual(const HeunParamsIS& hp, const OdeSolution& sol) {
    // Phi = psi / (1 - xi) = psi (1 + 6 beta p^2) as a function of xi.
    const double b6 = 6.0 * hp.beta;
    return max_residual(
        sol,
        [&](std::size_t i) {
            const double p = sol.grid[i];
            return sol.derivs[i] * (1.0 + b6 * p * p) + 2.0 * b6 * p * sol.values[i];
        },
        [&](std::size_t i, cplx fp, cplx fpp) {
            const double p = sol.grid[i];
            const double w = 1.0 + b6 * p * p;
            const double xi = b6 * p * p / w;
            const double xi_m1 = -1.0 / w;
            const double dxi = 2.0 * b6 * p / (w * w);
            const double d2xi = 2.0 * b6 * (1.0 - 3.0 * b6 * p * p) / (w * w * w);
            const cplx f = sol.values[i] * w;
            const cplx fx = fp / dxi;
            const cplx fxx = (fpp - d2xi * fx) / (dxi * dxi);
            const double P = hp.c / xi + hp.d / xi_m1 + hp.e / (xi - hp.xi0);
            const double Q = (hp.a * hp.b * xi + hp.q) / (xi * xi_m1 * (xi - hp.xi0));
            return normalized(fxx, P * fx, Q * f);
        });
}

double heun_residual(const HypergeometricParams& hp, const OdeSolution& sol) {
    // phi = p psi as a function of x = 1/2 + i p/(2k).
    const cplx dxdp = I / (2.0 * hp.k);
    return max_residual(
        sol, [&](std::size_t i) { return sol.values[i] + sol.grid[i] * sol.derivs[i]; },
        [&](std::size_t i, cplx fp, cplx fpp) {
            const double p = sol.grid[i];
            const cplx x = 0.5 + I * p / (2.0 * hp.k);
            const cplx f = p * sol.values[i];
            const cplx fx = fp / dxdp;
            const cplx fxx = fpp / (dxdp * dxdp);
            return normalized(x * (1.0 - x) * fxx, (hp.c - (hp.a + hp.b + 1.0) * x) * fx, -hp.a * hp.b * f);
        });
}

}  // namespace kratzer
