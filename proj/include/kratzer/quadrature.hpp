#pragma once

#include <functional>
#include <vector>

namespace kratzer::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7, 15) on [a, b]. The interval with the
/// largest |K15 - G7| is bisected until the summed estimate meets
/// max(abs_tol, rel_tol |I|) or max_intervals is reached; the caller decides
/// what to do with an unconverged result. `initial` uniform pieces seed the
/// interval queue.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                     int max_intervals, int initial = 8);

/// Generalized Gauss-Laguerre rule for the weight x^alpha e^-x on [0, inf).
/// Weights are kept as logarithms since Gamma(alpha + 1) is large for the
/// exponents that show up here.
struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> log_weights;
    double alpha = 0.0;
};

/// Golub-Welsch: eigen-decomposition of the Jacobi matrix. Requires order >= 1
/// and alpha > -1.
LaguerreRule gauss_laguerre(int order, double alpha);

}  // namespace kratzer::quad
