#include "kratzer/spectrum.hpp"

#include <cmath>
#include <string>

#include "kratzer/errors.hpp"

namespace kratzer {
namespace {

void require_beta(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be finite and non-negative");
}

void guard_lambda(double lambda, double pole) {
    if (!(lambda > pole + lambda_guard)) throw NearSingularLambda(lambda, pole);
}

// Curly bracket of the first-order correction. q = mu g1 / hbar^2 (= sigma1/2,
// or gamma^2/2 for the molecular parameterization).
double correction_bracket(double lambda, int n, double q) {
    const double s = lambda + n;
    const double lh = lambda - 0.5;
    const double middle = s / lh * (1.0 + q * (1.0 / (s * s) - 2.0 / (lambda * (lambda - 1.0))));
    const double last = q * q / (lh * (lambda - 1.0) * (lambda - 1.5) * s)
                        * (1.0 + 3.0 * n * (2.0 * lambda + n) / (lambda * (2.0 * lambda + 1.0)));
    return -0.75 + middle + last;
}

}  // namespace

double energy_unperturbed(const Molecule& mol, const QuantumNumbers& qn) {
    validate(qn);
    const double g = gamma_of(mol);
    const double s = lambda_of(g, qn.l) + qn.n;
    return -g * g * mol.De_si() / (s * s);
}

double energy_unperturbed(const KratzerCouplings& c, double mu_kg, const QuantumNumbers& qn) {
    validate(qn);
    if (!(mu_kg > 0.0)) throw InvalidInput("mass must be positive");
    const double s = lambda_from_sigma1(sigma1_of(c, mu_kg), qn.l) + qn.n;
    const double sigma2 = sigma2_of(c, mu_kg);
    return -sigma2 * sigma2 / (2.0 * mu_kg * s * s);
}

double matrix_element_closed(int p, const QuantumNumbers& qn, const ShapeNumbers& shape, double scale) {
    validate(qn);
    const double lam = shape.lambda;
    const double s = lam + qn.n;
    const int n = qn.n;
    switch (p) {
    case 1:
        return scale / (s * s);
    case 2:
        guard_lambda(lam, 0.5);
        return std::pow(scale, 2) / ((lam - 0.5) * s * s * s);
    case 3:
        guard_lambda(lam, 1.0);
        return std::pow(scale, 3) / (lam * (lam - 0.5) * (lam - 1.0) * s * s * s);
    case 4: {
        guard_lambda(lam, 1.5);
        const double num = 1.0 + 3.0 * n / lam * (1.0 + (n - 1.0) / (2.0 * lam + 1.0));
        return std::pow(scale, 4) * num / ((lam - 0.5) * (lam - 1.0) * (lam - 1.5) * std::pow(s, 5));
    }
    default:
        throw InvalidInput("inverse power must be 1, 2, 3 or 4, got " + std::to_string(p));
    }
}

double correction_hydrogen_limit(double g2, double mu_kg, double beta, const QuantumNumbers& qn) {
    validate(qn);
    require_beta(beta);
    if (!(mu_kg > 0.0)) throw InvalidInput("mass must be positive");
    const double np = qn.principal();
    // mu^3 g2^4 / hbar^4 = sigma2^4 / mu with sigma2 = mu g2 / hbar.
    const double sigma2 = mu_kg * g2 / units().hbar;
    const double p4 = std::pow(sigma2 / np, 4);
    return 4.0 * beta * p4 / mu_kg * (-0.75 + np / (qn.l + 0.5));
}

double correction_general(const KratzerCouplings& c, double mu_kg, double beta, const QuantumNumbers& qn) {
    validate(qn);
    require_beta(beta);
    if (!(mu_kg > 0.0)) throw InvalidInput("mass must be positive");
    if (c.g1 == 0.0) return correction_hydrogen_limit(c.g2, mu_kg, beta, qn);

    const double sigma1 = sigma1_of(c, mu_kg);
    const double lambda = lambda_from_sigma1(sigma1, qn.l);
    guard_lambda(lambda, 1.5);
    const double s = lambda + qn.n;
    const double momentum = sigma2_of(c, mu_kg) / s;
    return 4.0 * beta * std::pow(momentum, 4) / mu_kg * correction_bracket(lambda, qn.n, 0.5 * sigma1);
}

EnergyLevel energy_deformed(const Molecule& mol, double beta, const QuantumNumbers& qn) {
    validate(qn);
    require_beta(beta);
    const double g = gamma_of(mol);
    const double lambda = lambda_of(g, qn.l);
    guard_lambda(lambda, 1.5);
    const double De = mol.De_si();
    const double s = lambda + qn.n;

    EnergyLevel level;
    level.n = qn.n;
    level.l = qn.l;
    level.e0 = -g * g * De / (s * s);
    level.de = beta * mol.mu_si() * De * De * std::pow(2.0 * g / s, 4)
               * correction_bracket(lambda, qn.n, 0.5 * g * g);
    level.e = level.e0 + level.de;
    level.perturbative_warning = std::abs(level.de) > 0.1 * std::abs(level.e0);
    return level;
}

std::string_view term_name(TermKind kind) {
    switch (kind) {
    case TermKind::well_depth: return "well-depth";
    case TermKind::harmonic: return "harmonic";
    case TermKind::rotational: return "rotational";
    case TermKind::anharmonic: return "anharmonic";
    case TermKind::rovib_coupling: return "rovib-coupling";
    case TermKind::ml_anharmonic: return "ml-anharmonic";
    case TermKind::ml_harmonic: return "ml-harmonic";
    case TermKind::ml_coupling: return "ml-coupling";
    }
    return "?";
}

std::vector<ExpansionTerm> term_decomposition(const Molecule& mol, double beta, const QuantumNumbers& qn) {
    validate(qn);
    require_beta(beta);
    const double g = gamma_of(mol);
    const double De = mol.De_si();
    const double ml = beta * mol.mu_si() * De * De;
    const double v = qn.n + 0.5;
    const double r = qn.l + 0.5;
    const double g2 = g * g;
    const double g3 = g2 * g;

    return {
        {TermKind::well_depth, 0, -De},
        {TermKind::harmonic, 1, De * 2.0 * v / g},
        {TermKind::rotational, 2, De * r * r / g2},
        {TermKind::anharmonic, 2, -De * 3.0 * v * v / g2},
        {TermKind::anharmonic, 3, De * 4.0 * v * v * v / g3},
        {TermKind::rovib_coupling, 3, -De * 3.0 * v * r * r / g3},
        {TermKind::ml_anharmonic, 2, ml * 6.0 * (v * v + 0.25) / g2},
        {TermKind::ml_harmonic, 3, ml * 2.0 * v * -0.25 / g3},
        {TermKind::ml_coupling, 3, ml * 2.0 * v * 4.0 * r * r / g3},
        {TermKind::ml_anharmonic, 3, ml * 2.0 * v * -15.0 * v * v / g3},
    };
}

double energy_expansion(const Molecule& mol, double beta, const QuantumNumbers& qn) {
    double sum = 0.0;
    for (const auto& term : term_decomposition(mol, beta, qn)) sum += term.value;
    return sum;
}

}  // namespace kratzer
