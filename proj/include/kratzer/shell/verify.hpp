#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kratzer::shell {

enum class GridPreset { small, paper };

struct CheckResult {
    std::string name;
    double worst = 0.0;      // largest deviation seen
    double tolerance = 0.0;
    bool passed = false;
    std::string worst_case;  // where the largest deviation occurred
    long cases = 0;
};

/// `tol` overrides the built-in tolerance of every check when set.
std::vector<CheckResult> run_verify(GridPreset preset, std::optional<double> tol = std::nullopt);

/// Molecule-like SI state scales for a target gamma: re = 1 angstrom, mu = 1 amu.
struct GammaScale {
    double De_cm1;
    double re_A;
    double mu_amu;
};
GammaScale scale_for_gamma(double gamma);

}  // namespace kratzer::shell
