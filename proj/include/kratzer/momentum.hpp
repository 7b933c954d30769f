#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "kratzer/physmodel.hpp"

namespace kratzer {

using cplx = std::complex<double>;

/// Parameters of the s-wave momentum-space equation. Any coherent unit system
/// works (SI or natural units); sigma1 is dimensionless, sigma2 and k are
/// momenta, beta is an inverse momentum squared.
struct MomentumProblem {
    double sigma1 = 0.0;  // 2 mu g1 / hbar^2
    double sigma2 = 0.0;  // mu g2 / hbar
    double k = 1.0;       // k^2 = -2 mu E
    double beta = 0.0;
};

MomentumProblem momentum_problem(const KratzerCouplings& c, double mu_kg, double energy_j, double beta);

enum class Branch { fast_decay, slow_decay };
enum class Regime { deformed, undeformed };

std::string_view branch_name(Branch b);

/// psi(p) on an ascending log-spaced grid; psi = phi / p.
struct OdeSolution {
    std::vector<double> grid;
    std::vector<cplx> values;  // psi
    std::vector<cplx> derivs;  // dpsi/dp
    Branch branch = Branch::fast_decay;
    double points_per_decade = 0.0;
};

struct IntegrationRange {
    double p_min = 0.0;
    double p_max = 0.0;
    int points_per_decade = 200;
    double rel_tol = 1e-10;
};

/// p_max = 1e3 max(k, 1/sqrt(6 beta)), p_min = 1e-3 k.
IntegrationRange default_range(const MomentumProblem& prob);

/// phi'' from the phi = p psi form of the equation,
///
///   (p^2+k^2)(1+6bp^2) phi'' + {2bp(p^2+k^2) + 4p(1+6bp^2) + 2i s2 (1+3bp^2)} phi'
///     + {4(1+7bp^2) - 2b(p^2+k^2) - 2(1+6bp^2) - 4i b s2 p - s1} phi = 0.
///
/// Throws InvalidInput for p <= 0.
cplx ode_rhs_deformed(const MomentumProblem& prob, double p, cplx phi, cplx dphi);

/// Polynomial coefficients A, B, C of the phi equation, lowest degree first.
struct PhiEquation {
    std::array<cplx, 5> A{};
    std::array<cplx, 5> B{};
    std::array<cplx, 5> C{};
};

PhiEquation phi_equation(const MomentumProblem& prob);

/// Exponents s of psi ~ p^s at large p, ordered {fast, slow}:
/// deformed {-10/3, -2}; undeformed {-5/2 - nu, -5/2 + nu}.
std::array<cplx, 2> indicial_exponents(const MomentumProblem& prob, Regime regime);

/// Integrates one branch inward from p_max, starting from its asymptotic
/// series at infinity, and samples it on a log grid.
OdeSolution integrate_branch(const MomentumProblem& prob, Branch branch, const IntegrationRange& range);
OdeSolution integrate_branch(const MomentumProblem& prob, Branch branch);

/// Integrates from caller-supplied phi, phi' at range.p_max.
OdeSolution integrate_from(const MomentumProblem& prob, cplx phi, cplx dphi, const IntegrationRange& range,
                           Branch label);

/// Asymptotic series phi = sum_j c_j p^(s-j) of the phi equation at infinity,
/// evaluated at p. Truncated before a resonance or once terms stop shrinking.
std::array<cplx, 2> asymptotic_series(const MomentumProblem& prob, cplx exponent_phi, double p);

/// Least-squares slope of ln|psi| against ln p over [p_lo, p_hi].
double fit_loglog_slope(const OdeSolution& sol, double p_lo, double p_hi);

/// Slope over the top decade of the grid.
double fit_top_decade_slope(const OdeSolution& sol);

struct RegularizationReport {
    double sigma1 = 0.0;
    std::array<cplx, 2> deformed{};
    std::array<cplx, 2> undeformed{};
    double deformed_gap = 0.0;       // Re(slow - fast), deformed
    bool deformed_unique = false;    // always true: distinct real exponents
    bool undeformed_complex = false; // sigma1 < -1/4
    bool undeformed_boundary = false;// sigma1 == -1/4: degenerate double exponent
    bool undeformed_unique = false;  // real, separated exponents
    std::string summary;
};

RegularizationReport regularization_witness(double sigma1);

struct SwaveLevel {
    int n = 0;
    double k = 0.0;
    double energy = 0.0;
};

/// k_n = sigma2 / (n + 1/2 + nu), E_n = -k_n^2 / (2 mu). prob.k and prob.beta
/// are ignored. Throws InvalidInput for sigma1 <= -1/4 or sigma2 <= 0.
std::vector<SwaveLevel> quantize_swave(const MomentumProblem& prob, double mu, int n_max);

// ---------------------------------------------------------------------------
// Heun forms
// ---------------------------------------------------------------------------

enum class HeunVariant {
    /// sigma1 and sigma2 placed exactly as printed in the source parameter list.
    as_printed,
    /// sigma2 in the sqrt(beta)- and 1/k-coupled terms, sigma1 in the constant of rho2.
    dimensional,
};

/// Generalized Heun form (singular points 0, 1, z1, z2, infinity) in the
/// variable z = (1 - i sqrt(6 beta) p) / 2.
struct HeunParams {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
    double rho1 = 0, rho2 = 0;
    double z1 = 0, z2 = 0;
    double sqrt6beta = 0;
    HeunVariant variant = HeunVariant::dimensional;

    double fuchsian_defect() const { return (a + b + 1.0) - (c + d + e + f); }
};

/// Throws InvalidInput for beta <= 0 or k <= 0, PoleError when 6 beta k^2 == 1.
HeunParams heun_params_general(const MomentumProblem& prob, HeunVariant variant = HeunVariant::dimensional);

/// Heun form of the sigma2 = 0 equation in xi = 6 beta p^2 / (1 + 6 beta p^2),
/// with psi = (1 - xi) phi.
struct HeunParamsIS {
    double a = 0, b = 0, c = 0, d = 0, e = 0;
    double q = 0;
    double xi0 = 0;
    double beta = 0;

    double fuchsian_defect() const { return (a + b + 1.0) - (c + d + e); }
};

/// Throws PoleError when 1 + 12 mu beta E is within 1e-12 of zero.
HeunParamsIS heun_params_inverse_square(double sigma1, double mu, double energy, double beta);

/// Gauss form of the beta = 0 equation in x = 1/2 + i p / (2k).
struct HypergeometricParams {
    cplx a, b, c;
    double k = 1.0;
};

HypergeometricParams hypergeometric_params(const MomentumProblem& prob);

/// Pushes a numerical solution through the change of variables and returns
/// the largest normalized residual |L phi| / (sum of |term|) of the target
/// form at interior grid points. Second derivatives come from a five-point
/// stencil in ln p. Throws InvalidInput if the grid is too coarse.
double heun_residual(const HeunParams& params, const OdeSolution& sol);
double heun_residual(const HeunParamsIS& params, const OdeSolution& sol);
double heun_residual(const HypergeometricParams& params, const OdeSolution& sol);

}  // namespace kratzer
