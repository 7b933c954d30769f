#include "kratzer/wavefunctions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kratzer/errors.hpp"
#include "kratzer/momentum.hpp"

namespace kratzer {
namespace {

// Neumaier's variant of Kahan summation.
template <typename T>
struct CompensatedSum {
    T sum{};
    T comp{};

    void add(T x) {
        const T t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    T value() const { return sum + comp; }
};

RadialState assemble(const QuantumNumbers& qn, double gamma, double re) {
    RadialState st;
    st.qn = qn;
    st.shape = shape_numbers(gamma, qn);
    st.re = re;
    const double lam = st.shape.lambda;
    const double n = qn.n;
    st.log_norm = -1.5 * std::log(re) + (lam + 0.5) * std::log(2.0 * st.shape.alpha) - log_gamma(2.0 * lam)
                  + 0.5 * (log_gamma(2.0 * lam + n) - std::log(2.0) - log_gamma(n + 1.0) - std::log(lam + n));
    st.norm = std::exp(st.log_norm);
    return st;
}

}  // namespace

double kummer_polynomial(int n, double b, double z) {
    if (n < 0) throw InvalidInput("kummer_polynomial: n must be non-negative");
    for (int k = 0; k < n; ++k) {
        if (std::abs(b + k) < 1e-12)
            throw InvalidInput("kummer_polynomial: b = " + std::to_string(b) + " hits a pole of the series");
    }
    // Forward contiguous recurrence in n; stable where the power sum cancels.
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 1.0 - z / b;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + b - z) * cur - k * prev) / (b + k);
        prev = cur;
        cur = next;
    }
    return cur;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw InvalidInput("log_gamma: argument must be positive");
    return std::lgamma(x);
}

RadialState make_radial_state(const Molecule& mol, const QuantumNumbers& qn) {
    validate(mol);
    validate(qn);
    return assemble(qn, gamma_of(mol), mol.re_si());
}

RadialState make_radial_state(const KratzerCouplings& c, double mu_kg, const QuantumNumbers& qn) {
    validate(qn);
    if (!(c.g1 > 0.0) || !(c.g2 > 0.0)) throw InvalidInput("radial state needs g1 > 0 and g2 > 0");
    if (!(mu_kg > 0.0)) throw InvalidInput("mass must be positive");
    return assemble(qn, std::sqrt(sigma1_of(c, mu_kg)), 2.0 * c.g1 / c.g2);
}

LogMagnitude radial_log(const RadialState& state, double r) {
    if (!(r > 0.0)) throw InvalidInput("radial wavefunction needs r > 0");
    const double x = r / state.re;
    const double a = state.shape.alpha;
    const double m = kummer_polynomial(state.qn.n, 2.0 * state.shape.lambda, 2.0 * a * x);
    if (m == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {state.log_norm + (state.shape.lambda - 1.0) * std::log(x) - a * x + std::log(std::abs(m)),
            m > 0.0 ? 1 : -1};
}

double radial_wavefunction(const RadialState& state, double r) {
    const LogMagnitude lm = radial_log(state, r);
    return lm.sign * std::exp(lm.log_abs);
}

std::complex<double> momentum_wavefunction_undeformed(double p, int n, const MomentumProblem& prob) {
    if (!(p > 0.0)) throw InvalidInput("momentum wavefunction needs p > 0");
    if (!(prob.k > 0.0)) throw InvalidInput("momentum wavefunction needs k > 0");
    if (n < 0) throw InvalidInput("n must be non-negative");
    const IndexNu nu = index_nu(prob.sigma1);
    if (nu.imaginary || prob.sigma1 <= -0.25)
        throw InvalidInput("momentum wavefunction needs sigma1 > -1/4");
    const double second = 0.5 - prob.sigma2 / prob.k + nu.magnitude;
    if (std::abs(second + n) > 1e-9)
        throw InvalidInput("k is not quantized for n = " + std::to_string(n) + " (second parameter "
                           + std::to_string(second) + ")");

    using cd = std::complex<double>;
    const double a = 1.5 + nu.magnitude;
    const double c = 1.0 + 2.0 * nu.magnitude;
    const cd base(1.0, p / prob.k);
    const cd w = 2.0 / base;

    CompensatedSum<cd> acc;
    cd term = 1.0;
    acc.add(term);
    for (int j = 0; j < n; ++j) {
        term *= (a + j) * (j - n) / ((c + j) * (j + 1.0)) * w;
        acc.add(term);
    }
    return std::pow(base, -a) * acc.value() / p;
}

}  // namespace kratzer
