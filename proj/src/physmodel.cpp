#include "kratzer/physmodel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "kratzer/errors.hpp"

namespace kratzer {

double joules_per(EnergyUnit u) {
    switch (u) {
    case EnergyUnit::joule: return 1.0;
    case EnergyUnit::wavenumber: return units().wavenumber_to_joule;
    case EnergyUnit::electronvolt: return units().ev_to_joule;
    case EnergyUnit::hartree: return units().hartree_to_joule;
    }
    return 1.0;
}

double energy_to_si(double value, EnergyUnit u) { return value * joules_per(u); }
double energy_from_si(double joules, EnergyUnit u) { return joules / joules_per(u); }

double length_to_si(double value, LengthUnit u) {
    return u == LengthUnit::angstrom ? value * units().angstrom_to_m : value;
}

double length_from_si(double meters, LengthUnit u) {
    return u == LengthUnit::angstrom ? meters / units().angstrom_to_m : meters;
}

std::string_view unit_symbol(EnergyUnit u) {
    switch (u) {
    case EnergyUnit::joule: return "J";
    case EnergyUnit::wavenumber: return "cm-1";
    case EnergyUnit::electronvolt: return "eV";
    case EnergyUnit::hartree: return "hartree";
    }
    return "?";
}

std::optional<EnergyUnit> parse_energy_unit(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "j") return EnergyUnit::joule;
    if (lower == "cm-1" || lower == "cm^-1" || lower == "1/cm") return EnergyUnit::wavenumber;
    if (lower == "ev") return EnergyUnit::electronvolt;
    if (lower == "hartree" || lower == "eh") return EnergyUnit::hartree;
    return std::nullopt;
}

void validate(const Molecule& mol) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(mol.De)) throw InvalidInput("molecule '" + mol.name + "': De must be positive");
    if (!positive(mol.re)) throw InvalidInput("molecule '" + mol.name + "': re must be positive");
    if (!positive(mol.mu)) throw InvalidInput("molecule '" + mol.name + "': mu must be positive");
    if (mol.zpe_exp && !std::isfinite(*mol.zpe_exp))
        throw InvalidInput("molecule '" + mol.name + "': zpe_exp must be finite");
}

void validate(const QuantumNumbers& qn) {
    if (qn.n < 0 || qn.l < 0) throw InvalidInput("quantum numbers must be non-negative");
}

IndexNu index_nu(double sigma1) {
    const double radicand = 0.25 + sigma1;
    if (radicand >= 0.0) return {std::sqrt(radicand), false};
    return {std::sqrt(-radicand), true};
}

double gamma_of(const Molecule& mol) {
    validate(mol);
    const double g = mol.re_si() / units().hbar * std::sqrt(2.0 * mol.mu_si() * mol.De_si());
    if (!std::isfinite(g)) throw InvalidInput("gamma is not finite; check the molecular constants");
    return g;
}

double omega_of(const Molecule& mol) {
    return 2.0 * mol.De_si() / (units().hbar * gamma_of(mol));
}

KratzerCouplings couplings_from_kratzer(const Molecule& mol) {
    validate(mol);
    const double De = mol.De_si();
    const double re = mol.re_si();
    return {De * re * re, 2.0 * De * re};
}

double sigma1_of(const KratzerCouplings& c, double mu_kg) {
    const double hbar = units().hbar;
    return 2.0 * mu_kg * c.g1 / (hbar * hbar);
}

double sigma2_of(const KratzerCouplings& c, double mu_kg) { return mu_kg * c.g2 / units().hbar; }

double lambda_of(double gamma, int l) {
    const double h = l + 0.5;
    return 0.5 + std::sqrt(h * h + gamma * gamma);
}

double lambda_from_sigma1(double sigma1, int l) {
    const double h = l + 0.5;
    const double radicand = h * h + sigma1;
    if (!(radicand >= 0.0)) throw InvalidInput("(l + 1/2)^2 + sigma1 < 0: no real lambda");
    return 0.5 + std::sqrt(radicand);
}

ShapeNumbers shape_numbers(double gamma, const QuantumNumbers& qn) {
    validate(qn);
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInput("gamma must be finite and >= 0");
    ShapeNumbers s;
    s.gamma = gamma;
    s.lambda = lambda_of(gamma, qn.l);
    s.alpha = gamma * gamma / (s.lambda + qn.n);
    s.nu = index_nu(gamma * gamma);
    constexpr std::array poles{0.5, 1.0, 1.5};
    s.near_singular = std::any_of(poles.begin(), poles.end(),
                                  [&](double c) { return std::abs(s.lambda - c) < lambda_guard; });
    return s;
}

double minimal_length(const Deformation& d) {
    if (!(d.beta >= 0.0) || !(d.beta_prime >= 0.0))
        throw InvalidInput("deformation parameters must be non-negative");
    return units().hbar * std::sqrt(3.0 * d.beta + d.beta_prime);
}

double beta_from_minimal_length(double length_m) {
    if (!(length_m >= 0.0)) throw InvalidInput("minimal length must be non-negative");
    const double x = length_m / units().hbar;
    return x * x / 5.0;
}

}  // namespace kratzer
