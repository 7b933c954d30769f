#pragma once

#include <cmath>

#include "kratzer/physmodel.hpp"

namespace testing {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline kratzer::Molecule h2() {
    kratzer::Molecule m;
    m.name = "H2";
    m.De = 78844.9005;
    m.re = 0.73652;
    m.mu = 0.5039;
    m.zpe_exp = 2179.3;
    return m;
}

/// re = 1 angstrom, mu = 1 amu, De chosen to hit gamma.
inline kratzer::Molecule molecule_for(double gamma, double re_A = 1.0, double mu_amu = 1.0) {
    const auto& u = kratzer::units();
    const double re = re_A * u.angstrom_to_m;
    const double De = gamma * gamma * u.hbar * u.hbar / (2.0 * mu_amu * u.amu_to_kg * re * re);
    kratzer::Molecule m;
    m.name = "test";
    m.De = De / u.wavenumber_to_joule;
    m.re = re_A;
    m.mu = mu_amu;
    return m;
}

}  // namespace testing
