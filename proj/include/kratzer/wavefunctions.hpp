#pragma once

#include <complex>

#include "kratzer/physmodel.hpp"

namespace kratzer {

struct MomentumProblem;

/// Terminating Kummer function 1F1(-n; b; z) by forward recurrence in n.
/// Throws InvalidInput when b is within 1e-12 of 0, -1, ..., -(n-1).
double kummer_polynomial(int n, double b, double z);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Normalized bound state of the undeformed Kratzer problem (radial part).
///
///   R(r) = N (r/re)^(lambda-1) exp(-alpha r/re) 1F1(-n; 2 lambda; 2 alpha r/re)
///
/// `re` is the length unit of the shape numbers: the equilibrium distance for
/// a molecule, 2 g1/g2 for general couplings. N is assembled in log space
/// because Gamma(2 lambda + n) overflows for realistic molecules.
struct RadialState {
    QuantumNumbers qn;
    ShapeNumbers shape;
    double re = 0.0;        // m
    double log_norm = 0.0;  // ln N, N in m^-3/2
    double norm = 0.0;

    /// alpha / re, m^-1.
    double decay_rate() const { return shape.alpha / re; }
};

RadialState make_radial_state(const Molecule& mol, const QuantumNumbers& qn);

/// Requires g1 > 0 and g2 > 0.
RadialState make_radial_state(const KratzerCouplings& c, double mu_kg, const QuantumNumbers& qn);

struct LogMagnitude {
    double log_abs;  // ln |value|, -inf at a node
    int sign;        // -1, 0, +1
};

/// ln|R(r)| and its sign; use when R itself would under/overflow.
LogMagnitude radial_log(const RadialState& state, double r);

/// R(r) in m^-3/2. Throws InvalidInput for r <= 0.
double radial_wavefunction(const RadialState& state, double r);

/// Unnormalized s-wave momentum-space solution of the undeformed problem at a
/// quantized k:
///
///   psi(p) = (1/p) (1 + i p/k)^(-3/2-nu) F(3/2+nu, 1/2 - sigma2/k + nu; 1+2nu; 2/(1 + i p/k))
///
/// The hypergeometric series terminates because its second parameter is -n.
/// Throws InvalidInput if it is not within 1e-9 of -n, or if sigma1 <= -1/4.
std::complex<double> momentum_wavefunction_undeformed(double p, int n, const MomentumProblem& prob);

}  // namespace kratzer
