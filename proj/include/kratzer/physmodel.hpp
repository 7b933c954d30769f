#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace kratzer {

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

/// Conversion factors to SI. Everything inside the library is SI; the other
/// units only appear at I/O boundaries.
struct UnitSystem {
    double hbar;                 // J s
    double amu_to_kg;
    double wavenumber_to_joule;  // J per cm^-1 (h c * 100)
    double angstrom_to_m;
    double ev_to_joule;
    double hartree_to_joule;
};

/// CODATA 2018 values.
inline constexpr UnitSystem codata2018{
    1.054571817e-34,
    1.66053906660e-27,
    6.62607015e-34 * 299792458.0 * 100.0,
    1e-10,
    1.602176634e-19,
    4.3597447222071e-18,
};

inline constexpr const UnitSystem& units() { return codata2018; }

enum class EnergyUnit { joule, wavenumber, electronvolt, hartree };
enum class LengthUnit { meter, angstrom };

double joules_per(EnergyUnit u);
double energy_to_si(double value, EnergyUnit u);
double energy_from_si(double joules, EnergyUnit u);
double length_to_si(double value, LengthUnit u);
double length_from_si(double meters, LengthUnit u);

/// "cm-1", "eV", "J", "hartree".
std::string_view unit_symbol(EnergyUnit u);
/// Accepts the symbols produced by unit_symbol (case-insensitive, "cm^-1" too).
std::optional<EnergyUnit> parse_energy_unit(std::string_view s);

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Spectroscopic constants of a diatomic molecule, in the units they are
/// usually tabulated in.
struct Molecule {
    std::string name;
    double De = 0.0;  // cm^-1
    double re = 0.0;  // angstrom
    double mu = 0.0;  // amu
    std::optional<double> zpe_exp;  // cm^-1

    double De_si() const { return De * units().wavenumber_to_joule; }
    double re_si() const { return re * units().angstrom_to_m; }
    double mu_si() const { return mu * units().amu_to_kg; }
};

/// Throws InvalidInput unless De, re, mu are finite and positive.
void validate(const Molecule& mol);

/// V(r) = g1/r^2 - g2/r, SI units (J m^2 and J m).
struct KratzerCouplings {
    double g1 = 0.0;
    double g2 = 0.0;
};

/// nu = sqrt(1/4 + sigma1); for sigma1 < -1/4 the root is imaginary and only
/// its magnitude is stored.
struct IndexNu {
    double magnitude = 0.0;
    bool imaginary = false;

    std::complex<double> value() const {
        return imaginary ? std::complex<double>(0.0, magnitude) : std::complex<double>(magnitude, 0.0);
    }
};

IndexNu index_nu(double sigma1);

struct QuantumNumbers {
    int n = 0;  // radial (vibrational)
    int l = 0;  // orbital (rotational)

    int principal() const { return n + l + 1; }
};

void validate(const QuantumNumbers& qn);

struct ShapeNumbers {
    double gamma = 0.0;
    double lambda = 1.0;
    double alpha = 0.0;
    IndexNu nu;
    /// lambda sits within lambda_guard of 1/2, 1 or 3/2.
    bool near_singular = false;
};

inline constexpr double lambda_guard = 1e-6;

/// Deformation parameters of the modified Heisenberg algebra, SI ((kg m/s)^-2).
struct Deformation {
    double beta = 0.0;
    double beta_prime = 0.0;

    /// The beta' = 2 beta case used by the coordinate-space perturbation theory.
    static Deformation minimal(double beta) { return {beta, 2.0 * beta}; }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// gamma = (re/hbar) sqrt(2 mu De).
double gamma_of(const Molecule& mol);

/// Classical small-vibration frequency omega = 2 De / (hbar gamma), rad/s.
double omega_of(const Molecule& mol);

/// g1 = De re^2, g2 = 2 De re.
KratzerCouplings couplings_from_kratzer(const Molecule& mol);

/// sigma1 = 2 mu g1 / hbar^2 (dimensionless).
double sigma1_of(const KratzerCouplings& c, double mu_kg);
/// sigma2 = mu g2 / hbar (momentum).
double sigma2_of(const KratzerCouplings& c, double mu_kg);

/// lambda = 1/2 + sqrt((l + 1/2)^2 + gamma^2).
double lambda_of(double gamma, int l);

/// lambda for general couplings: 1/2 + sqrt((l + 1/2)^2 + sigma1). Throws
/// InvalidInput when the radicand is negative (no real index).
double lambda_from_sigma1(double sigma1, int l);

/// lambda, alpha = gamma^2/(lambda + n), and nu for sigma1 = gamma^2.
ShapeNumbers shape_numbers(double gamma, const QuantumNumbers& qn);

/// (Delta X)_min = hbar sqrt(3 beta + beta'), meters.
double minimal_length(const Deformation& d);

/// Inverse of minimal_length on the beta' = 2 beta branch.
double beta_from_minimal_length(double length_m);

}  // namespace kratzer
