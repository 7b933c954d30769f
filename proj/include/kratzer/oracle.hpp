#pragma once

#include "kratzer/physmodel.hpp"
#include "kratzer/wavefunctions.hpp"

namespace kratzer {

enum class QuadratureScheme {
    /// Adaptive Gauss-Kronrod on t in [0, 1), r = r_c t / (1 - t).
    adaptive,
    /// Fixed-order generalized Gauss-Laguerre in x = 2 alpha r / re.
    gauss_laguerre,
};

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::adaptive;
    double abs_tol = 1e-300;
    double rel_tol = 1e-10;
    int max_intervals = 4000;  // adaptive
    int order = 64;            // Gauss-Laguerre
};

/// Throws InvalidInput for rel_tol < 1e-12, negative abs_tol or a non-positive
/// interval budget / order.
void validate(const QuadratureSpec& spec);

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// <r^-p> = integral of R^2 r^(2-p) dr, p in 0..4 (p = 0 is the norm). SI units.
/// Throws InvalidInput when 2 lambda - p <= -1 (divergent at the origin) and
/// ConvergenceError, carrying the best estimate, when the tolerance is missed.
Estimate expectation_inverse_power(int p, const RadialState& state, const QuadratureSpec& spec = {});

/// Integral of R_a R_b r^2 dr by the adaptive scheme (the scheme field is
/// ignored). Both states must share re.
Estimate overlap(const RadialState& a, const RadialState& b, const QuadratureSpec& spec = {});

/// <V> with V = g1/r^2 - g2/r, integrated as one assembled integrand.
Estimate expectation_potential(const RadialState& state, const KratzerCouplings& c, const QuadratureSpec& spec = {});

/// <V^2>, integrated as one assembled integrand.
Estimate expectation_potential_sq(const RadialState& state, const KratzerCouplings& c,
                                  const QuadratureSpec& spec = {});

/// 4 beta mu [(E0)^2 - 2 E0 <V> + <V^2>], with E0 from the closed-form spectrum.
double correction_via_expectations(const RadialState& state, const KratzerCouplings& c, double mu_kg, double beta,
                                   const QuadratureSpec& spec = {});

}  // namespace kratzer
