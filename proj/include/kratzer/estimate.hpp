#pragma once

#include <vector>

#include "kratzer/physmodel.hpp"

namespace kratzer {

/// G = E00 + De in cm^-1.
double zpe_theoretical(const Molecule& mol, double beta);

/// Upper bound on the minimal length when the whole gap between the measured
/// and the beta = 0 zero-point energy is attributed to the deformation.
struct BoundResult {
    double delta_cm1 = 0.0;          // G_exp - G(beta = 0)
    double beta_max = 0.0;           // SI
    double min_length_max_A = 0.0;   // hbar sqrt(5 beta_max), angstrom
    double correction_per_beta = 0.0;// Delta E00 at beta = 1, J
};

/// Requires mol.zpe_exp. delta < 0 throws NoPositiveGap; delta == 0 gives a
/// zero bound.
BoundResult beta_upper_bound(const Molecule& mol);

struct LevelObservation {
    int n = 0;
    int l = 0;
    double E_cm1 = 0.0;
    double weight = 1.0;
};

struct FitInit {
    double De = 0.0;    // cm^-1
    double re = 0.0;    // angstrom
    double beta = 0.0;  // SI
};

struct FitOptions {
    int max_evaluations = 10'000;
    double simplex_tol = 1e-10;  // relative simplex diameter
    int restarts = 3;
    bool polish = true;          // finite-difference Levenberg-Marquardt after the simplex
};

struct FitResult {
    double De = 0.0;
    double re = 0.0;
    double beta = 0.0;
    double rss = 0.0;  // cm^-2
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    /// Best objective after every accepted step; non-increasing.
    std::vector<double> rss_history;
};

/// Weighted least squares of energy_deformed against observed levels in
/// (De, re, beta) with beta >= 0. Needs at least 4 levels with distinct (n, l);
/// the result does not depend on their order.
FitResult fit_parameters(const std::vector<LevelObservation>& levels, double mu_amu, const FitInit& init,
                         const FitOptions& opts = {});

/// Objective of fit_parameters at a given point; +inf outside De, re > 0, beta >= 0.
double fit_objective(const std::vector<LevelObservation>& levels, double mu_amu, double De, double re, double beta);

}  // namespace kratzer
