#pragma once

#include <string_view>
#include <vector>

#include "kratzer/physmodel.hpp"

namespace kratzer {

/// One bound level, energies in joules.
struct EnergyLevel {
    int n = 0;
    int l = 0;
    double e0 = 0.0;  // unperturbed
    double de = 0.0;  // first-order minimal-length correction
    double e = 0.0;   // e0 + de
    /// |de / e0| > 0.1: first order is unlikely to be adequate.
    bool perturbative_warning = false;
};

/// E0 = -gamma^2 De / (lambda + n)^2.
double energy_unperturbed(const Molecule& mol, const QuantumNumbers& qn);

/// E0 = -mu g2^2 / (2 hbar^2 (lambda + n)^2), lambda from sigma1 = 2 mu g1/hbar^2.
double energy_unperturbed(const KratzerCouplings& c, double mu_kg, const QuantumNumbers& qn);

/// Closed-form <r^-p> for p in 1..4, in SI (m^-p). `scale` is mu g2 / hbar^2 (m^-1);
/// only shape.lambda is read. Throws NearSingularLambda when lambda is within
/// lambda_guard of (or below) the pole that makes the moment diverge.
double matrix_element_closed(int p, const QuantumNumbers& qn, const ShapeNumbers& shape, double scale);

/// First-order correction for V = g1/r^2 - g2/r. Dispatches to
/// correction_hydrogen_limit when g1 == 0.
double correction_general(const KratzerCouplings& c, double mu_kg, double beta, const QuantumNumbers& qn);

/// Coulomb (g1 = 0) correction 4 beta mu^3 g2^4/(hbar^4 np^4) (-3/4 + np/(l + 1/2)).
double correction_hydrogen_limit(double g2, double mu_kg, double beta, const QuantumNumbers& qn);

/// Full first-order level written in Kratzer's parameters (De, re).
EnergyLevel energy_deformed(const Molecule& mol, double beta, const QuantumNumbers& qn);

// ---------------------------------------------------------------------------
// 1/gamma expansion
// ---------------------------------------------------------------------------

enum class TermKind {
    well_depth,       // -De
    harmonic,         // 2 (n+1/2)/gamma
    rotational,       // (l+1/2)^2/gamma^2
    anharmonic,       // -3 (n+1/2)^2/gamma^2 and 4 (n+1/2)^3/gamma^3
    rovib_coupling,   // -3 (n+1/2)(l+1/2)^2/gamma^3
    ml_anharmonic,    // minimal-length terms that depend on n only
    ml_harmonic,
    ml_coupling,
};

std::string_view term_name(TermKind kind);

struct ExpansionTerm {
    TermKind kind;
    int order;     // power of 1/gamma
    double value;  // joules
};

/// Terms of the expansion in the order they are summed by energy_expansion.
std::vector<ExpansionTerm> term_decomposition(const Molecule& mol, double beta, const QuantumNumbers& qn);

/// Expansion of energy_deformed through 1/gamma^3, joules.
double energy_expansion(const Molecule& mol, double beta, const QuantumNumbers& qn);

}  // namespace kratzer
