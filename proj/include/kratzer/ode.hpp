#pragma once

#include <array>
#include <complex>
#include <functional>

namespace kratzer::ode {

using State = std::array<std::complex<double>, 2>;
using Rhs = std::function<State(double t, const State& y)>;

struct Tolerances {
    double rel = 1e-10;
    double abs = 0.0;
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

/// Dormand-Prince 5(4) with embedded error control and FSAL. Integrates in
/// either direction; the last accepted step size carries over between calls,
/// so stepping through a dense output grid costs little extra.
class Dopri5 {
public:
    Dopri5(Rhs rhs, Tolerances tol);

    /// Advances (t, y) to t_end. Throws StiffnessError if the step size
    /// collapses below ~1e-13 |t| or the step budget runs out.
    void advance(double& t, State& y, double t_end);

    const Stats& stats() const { return stats_; }

private:
    double error_norm(const State& y, const State& y_new, const State& err) const;

    Rhs rhs_;
    Tolerances tol_;
    Stats stats_;
    double h_ = 0.0;
    long max_steps_ = 10'000'000;
};

}  // namespace kratzer::ode
