#include "kratzer/estimate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "kratzer/errors.hpp"
#include "kratzer/spectrum.hpp"

namespace kratzer {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using Point = std::array<double, 3>;

struct Vertex {
    Point x;
    double f;
};

// Scaled coordinates: (De / De0, re / re0, beta / beta_scale).
class Problem {
public:
    Problem(std::vector<LevelObservation> levels, double mu, const FitInit& init)
        : levels_(std::move(levels)), mu_(mu), scale_{init.De, init.re, beta_scale(init, mu)} {}

    double value(const Point& x) {
        ++evaluations;
        return fit_objective(levels_, mu_, x[0] * scale_[0], x[1] * scale_[1], x[2] * scale_[2]);
    }

    // Weighted residuals in cm^-1; false when the point is unphysical.
    bool residuals(const Point& x, Eigen::VectorXd& r) {
        ++evaluations;
        Molecule mol;
        mol.De = x[0] * scale_[0];
        mol.re = x[1] * scale_[1];
        mol.mu = mu_;
        const double beta = x[2] * scale_[2];
        if (!(mol.De > 0.0) || !(mol.re > 0.0) || !(beta >= 0.0)) return false;
        r.resize(static_cast<Eigen::Index>(levels_.size()));
        try {
            for (std::size_t i = 0; i < levels_.size(); ++i) {
                const auto& lv = levels_[i];
                const double e = energy_deformed(mol, beta, {lv.n, lv.l}).e / units().wavenumber_to_joule;
                r[static_cast<Eigen::Index>(i)] = std::sqrt(lv.weight) * (e - lv.E_cm1);
            }
        } catch (const Error&) {
            return false;
        }
        return r.allFinite();
    }

    Point unscale(const Point& x) const { return {x[0] * scale_[0], x[1] * scale_[1], x[2] * scale_[2]}; }

    int evaluations = 0;

private:
    static double beta_scale(const FitInit& init, double mu_amu) {
        if (init.beta > 0.0) return init.beta;
        // beta mu De ~ 1e-3 is already a large deformation.
        return 1e-3 / (mu_amu * units().amu_to_kg * init.De * units().wavenumber_to_joule);
    }

    std::vector<LevelObservation> levels_;
    double mu_;
    Point scale_;
};

void project(Point& x) { x[2] = std::max(x[2], 0.0); }

double diameter(const std::array<Vertex, 4>& s) {
    double d = 0.0;
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            d = std::max(d, std::abs(s[i].x[j] - s[0].x[j]) / std::max(1.0, std::abs(s[0].x[j])));
    return d;
}

struct SimplexOutcome {
    Vertex best;
    int iterations = 0;
    bool converged = false;
};

SimplexOutcome nelder_mead(Problem& prob, Vertex start, double step, const FitOptions& opts,
                           std::vector<double>& history) {
    std::array<Vertex, 4> s;
    s[0] = start;
    for (int i = 0; i < 3; ++i) {
        Point x = start.x;
        x[i] += x[i] != 0.0 ? step * x[i] : step;
        project(x);
        s[i + 1] = {x, prob.value(x)};
    }

    auto sort = [&s]() {
        std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    auto combine = [](const Point& c, const Point& w, double t) {
        Point out;
        for (int j = 0; j < 3; ++j) out[j] = c[j] + t * (w[j] - c[j]);
        project(out);
        return out;
    };

    SimplexOutcome out;
    sort();
    while (prob.evaluations < opts.max_evaluations) {
        if (diameter(s) < opts.simplex_tol) {
            out.converged = true;
            break;
        }
        ++out.iterations;
        Point c{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) c[j] += s[i].x[j] / 3.0;

        const Point xr = combine(c, s[3].x, -1.0);
        const double fr = prob.value(xr);
        if (fr < s[0].f) {
            const Point xe = combine(c, s[3].x, -2.0);
            const double fe = prob.value(xe);
            s[3] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < s[2].f) {
            s[3] = {xr, fr};
        } else {
            const bool outside = fr < s[3].f;
            const Point xc = combine(c, s[3].x, outside ? -0.5 : 0.5);
            const double fc = prob.value(xc);
            if (fc < (outside ? fr : s[3].f)) {
                s[3] = {xc, fc};
            } else {
                for (int i = 1; i < 4; ++i) {
                    s[i].x = combine(s[0].x, s[i].x, 0.5);
                    s[i].f = prob.value(s[i].x);
                }
            }
        }
        sort();
        if (s[0].f < history.back()) history.push_back(s[0].f);
    }
    out.best = s[0];
    return out;
}

// Levenberg-Marquardt with a forward/central finite-difference Jacobian.
// Only steps that lower the objective are taken.
int polish(Problem& prob, Vertex& best, const FitOptions& opts, std::vector<double>& history, bool& converged) {
    Eigen::VectorXd r;
    if (!prob.residuals(best.x, r)) return 0;
    double damping = 1e-3;
    int iterations = 0;
    for (int it = 0; it < 200 && prob.evaluations < opts.max_evaluations; ++it) {
        ++iterations;
        Eigen::MatrixXd J(r.size(), 3);
        bool ok = true;
        for (int j = 0; j < 3 && ok; ++j) {
            const double h = 1e-7 * std::max(std::abs(best.x[j]), 1e-3);
            Point xp = best.x, xm = best.x;
            xp[j] += h;
            Eigen::VectorXd rp, rm;
            ok = prob.residuals(xp, rp);
            if (!ok) break;
            xm[j] -= h;
            if (xm[j] >= 0.0 || j < 2) {
                ok = prob.residuals(xm, rm);
                if (!ok) break;
                J.col(j) = (rp - rm) / (2.0 * h);
            } else {
                J.col(j) = (rp - r) / h;
            }
        }
        if (!ok) break;

        const Eigen::Matrix3d JtJ = J.transpose() * J;
        const Eigen::Vector3d g = J.transpose() * r;
        bool stepped = false;
        while (damping < 1e12) {
            Eigen::Matrix3d A = JtJ;
            A.diagonal() += damping * JtJ.diagonal().cwiseMax(1e-300);
            const Eigen::Vector3d delta = A.ldlt().solve(-g);
            Point xn{best.x[0] + delta[0], best.x[1] + delta[1], best.x[2] + delta[2]};
            project(xn);
            Eigen::VectorXd rn;
            const double fn = prob.residuals(xn, rn) ? prob.value(xn) : inf;
            if (fn < best.f) {
                const double move = std::max({std::abs(xn[0] - best.x[0]), std::abs(xn[1] - best.x[1]),
                                              std::abs(xn[2] - best.x[2])});
                best = {xn, fn};
                r = rn;
                history.push_back(fn);
                damping = std::max(damping * 0.2, 1e-12);
                stepped = true;
                if (move < 1e-15) converged = true;
                break;
            }
            damping *= 10.0;
        }
        if (!stepped) {
            // No descent direction left at working precision.
            converged = true;
            break;
        }
        if (converged) break;
    }
    return iterations;
}

}  // namespace

double zpe_theoretical(const Molecule& mol, double beta) {
    validate(mol);
    const EnergyLevel lv = energy_deformed(mol, beta, {0, 0});
    return lv.e / units().wavenumber_to_joule + mol.De;
}

BoundResult beta_upper_bound(const Molecule& mol) {
    validate(mol);
    if (!mol.zpe_exp) throw InvalidInput("molecule has no experimental zero-point energy");
    BoundResult b;
    b.delta_cm1 = *mol.zpe_exp - zpe_theoretical(mol, 0.0);
    if (b.delta_cm1 < 0.0) throw NoPositiveGap(b.delta_cm1);
    b.correction_per_beta = correction_general(couplings_from_kratzer(mol), mol.mu_si(), 1.0, {0, 0});
    b.beta_max = b.delta_cm1 * units().wavenumber_to_joule / b.correction_per_beta;
    b.min_length_max_A = length_from_si(minimal_length(Deformation::minimal(b.beta_max)), LengthUnit::angstrom);
    return b;
}

double fit_objective(const std::vector<LevelObservation>& levels, double mu_amu, double De, double re, double beta) {
    if (!(De > 0.0) || !(re > 0.0) || !(beta >= 0.0) || !std::isfinite(De) || !std::isfinite(re)
        || !std::isfinite(beta))
        return inf;
    Molecule mol;
    mol.De = De;
    mol.re = re;
    mol.mu = mu_amu;
    double sum = 0.0;
    try {
        for (const auto& lv : levels) {
            const double e = energy_deformed(mol, beta, {lv.n, lv.l}).e / units().wavenumber_to_joule;
            const double d = e - lv.E_cm1;
            sum += lv.weight * d * d;
        }
    } catch (const Error&) {
        return inf;
    }
    return std::isfinite(sum) ? sum : inf;
}

FitResult fit_parameters(const std::vector<LevelObservation>& levels, double mu_amu, const FitInit& init,
                         const FitOptions& opts) {
    if (levels.size() < 4) throw InvalidInput("fit needs at least 4 levels for 3 parameters");
    if (!(mu_amu > 0.0)) throw InvalidInput("mass must be positive");
    if (!(init.De > 0.0) || !(init.re > 0.0) || !(init.beta >= 0.0))
        throw InvalidInput("initial guess must have De > 0, re > 0, beta >= 0");

    std::vector<LevelObservation> sorted = levels;
    std::sort(sorted.begin(), sorted.end(),
              [](const LevelObservation& a, const LevelObservation& b) { return std::tie(a.n, a.l) < std::tie(b.n, b.l); });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& lv = sorted[i];
        if (lv.n < 0 || lv.l < 0) throw InvalidInput("quantum numbers must be non-negative");
        if (!std::isfinite(lv.E_cm1) || !(lv.weight > 0.0) || !std::isfinite(lv.weight))
            throw InvalidInput("level energies must be finite and weights positive");
        if (i > 0 && sorted[i - 1].n == lv.n && sorted[i - 1].l == lv.l)
            throw InvalidInput("repeated level (n, l) = (" + std::to_string(lv.n) + ", " + std::to_string(lv.l) + ")");
    }

    Problem prob(std::move(sorted), mu_amu, init);
    const Point x0{1.0, 1.0, init.beta > 0.0 ? 1.0 : 0.0};
    Vertex best{x0, prob.value(x0)};
    if (!std::isfinite(best.f)) throw InvalidInput("objective is not finite at the initial guess");

    FitResult res;
    res.rss_history.push_back(best.f);
    bool converged = false;
    double step = 0.05;
    for (int round = 0; round <= opts.restarts && prob.evaluations < opts.max_evaluations; ++round) {
        const double before = best.f;
        const SimplexOutcome o = nelder_mead(prob, best, step, opts, res.rss_history);
        res.iterations += o.iterations;
        if (o.best.f <= best.f) best = o.best;
        converged = o.converged;
        if (!(best.f < before) && round > 0) break;
        step = 1e-3;
    }
    if (opts.polish) {
        bool lm_converged = false;
        res.iterations += polish(prob, best, opts, res.rss_history, lm_converged);
        converged = converged || lm_converged;
    }

    const Point p = prob.unscale(best.x);
    res.De = p[0];
    res.re = p[1];
    res.beta = p[2];
    res.rss = best.f;
    res.evaluations = prob.evaluations;
    res.converged = converged && prob.evaluations <= opts.max_evaluations;
    return res;
}

}  // namespace kratzer
