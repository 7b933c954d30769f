// Acceptance suite. One PASS/FAIL line per criterion; exit status 1 if any fails.
//   acceptance                 run all
//   acceptance --criterion N   run one

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kratzer/errors.hpp"
#include "kratzer/estimate.hpp"
#include "kratzer/momentum.hpp"
#include "kratzer/oracle.hpp"
#include "kratzer/spectrum.hpp"
#include "kratzer/wavefunctions.hpp"

using namespace kratzer;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Molecule h2() {
    Molecule m;
    m.name = "H2";
    m.De = 78844.9005;
    m.re = 0.73652;
    m.mu = 0.5039;
    m.zpe_exp = 2179.3;
    return m;
}

Molecule molecule_for(double gamma, double re_A = 1.0, double mu_amu = 1.0) {
    const auto& u = units();
    const double re = re_A * u.angstrom_to_m;
    Molecule m;
    m.De = gamma * gamma * u.hbar * u.hbar / (2.0 * mu_amu * u.amu_to_kg * re * re) / u.wavenumber_to_joule;
    m.re = re_A;
    m.mu = mu_amu;
    return m;
}

std::string str(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

const std::vector<double> gamma_grid{2.0, 5.0, 10.0, 35.755};

// ---------------------------------------------------------------------------

Outcome c1() {
    constexpr double target = 2174.9, tol = 1.0;
    const double g = zpe_theoretical(h2(), 0.0);
    return {std::abs(g - target) <= tol, "G(beta=0) = " + str(g) + " cm-1, target " + str(target) + " +- " + str(tol)};
}

Outcome c2() {
    constexpr double lo = 0.0100, hi = 0.0104;
    const BoundResult b = beta_upper_bound(h2());
    return {b.min_length_max_A >= lo && b.min_length_max_A <= hi,
            "delta = " + str(b.delta_cm1) + " cm-1, DeltaX_min <= " + str(b.min_length_max_A) + " angstrom, window ["
                + str(lo) + ", " + str(hi) + "]"};
}

Outcome c3() {
    constexpr double tol = 1e-8;
    double worst_m = 0.0, worst_c = 0.0;
    for (double g : gamma_grid) {
        const Molecule m = molecule_for(g);
        const KratzerCouplings c = couplings_from_kratzer(m);
        const double scale = m.mu_si() * c.g2 / (units().hbar * units().hbar);
        for (int n = 0; n <= 5; ++n)
            for (int l = 0; l <= 5; ++l) {
                const QuantumNumbers qn{n, l};
                const RadialState st = make_radial_state(m, qn);
                for (int p = 1; p <= 4; ++p)
                    worst_m = std::max(worst_m, rel(expectation_inverse_power(p, st).value,
                                                    matrix_element_closed(p, qn, st.shape, scale)));
                for (double beta : {1e-50, 1e-46, 1e-42})
                    worst_c = std::max(worst_c, rel(correction_via_expectations(st, c, m.mu_si(), beta),
                                                    correction_general(c, m.mu_si(), beta, qn)));
            }
    }
    return {worst_m <= tol && worst_c <= tol,
            "moments worst " + str(worst_m) + ", correction worst " + str(worst_c) + ", tol " + str(tol)};
}

Outcome c4() {
    constexpr double tol = 1e-12;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Molecule m;
        m.De = std::pow(10.0, 3.0 + 2.0 * u01(rng));
        m.re = 0.5 + 2.5 * u01(rng);
        m.mu = 0.5 + 49.5 * u01(rng);
        const QuantumNumbers qn{static_cast<int>(11 * u01(rng)), static_cast<int>(11 * u01(rng))};
        const double beta = std::pow(10.0, -50.0 + 8.0 * u01(rng));
        const KratzerCouplings c = couplings_from_kratzer(m);
        const double split = energy_unperturbed(c, m.mu_si(), qn) + correction_general(c, m.mu_si(), beta, qn);
        worst = std::max(worst, rel(energy_deformed(m, beta, qn).e, split));
    }
    return {worst <= tol, "1000 draws, worst " + str(worst) + ", tol " + str(tol)};
}

Outcome c5() {
    // s-waves sit on the lambda = 3/2 guard as g1 -> 0, so l >= 1. The length
    // scale for g1 is the Bohr radius of the Coulomb part.
    constexpr double tol = 1e-6;
    const double mu = units().amu_to_kg, g2 = 2.3e-28, beta = 1e40;
    const double a0 = units().hbar * units().hbar / (mu * g2);
    double worst = 0.0;
    bool exact = true;
    for (int l = 1; l <= 5; ++l)
        for (int n = 0; n <= 5; ++n) {
            const QuantumNumbers qn{n, l};
            const double ref = correction_hydrogen_limit(g2, mu, beta, qn);
            worst = std::max(worst, rel(correction_general({1e-9 * g2 * a0, g2}, mu, beta, qn), ref));
            exact = exact && correction_general({0.0, g2}, mu, beta, qn) == ref;
        }
    return {worst <= tol && exact,
            "g1 = 1e-9 g2 a0 worst " + str(worst) + " (tol " + str(tol) + "), g1 = 0 exact: " + (exact ? "yes" : "no")};
}

Outcome c6() {
    constexpr double tol = 1e-12;
    double worst = 0.0;
    for (double g : {2.0, 5.0, 35.755}) {
        const Molecule m = molecule_for(g);
        const KratzerCouplings c = couplings_from_kratzer(m);
        MomentumProblem prob;
        prob.sigma1 = sigma1_of(c, m.mu_si());
        prob.sigma2 = sigma2_of(c, m.mu_si());
        for (const auto& lv : quantize_swave(prob, m.mu_si(), 10))
            worst = std::max(worst, rel(lv.energy, energy_unperturbed(m, {lv.n, 0})));
    }
    return {worst <= tol, "worst " + str(worst) + ", tol " + str(tol)};
}

Outcome c7() {
    constexpr double tol = 0.02;
    double worst = 0.0;
    for (double s1 : {-2.0, -1.0, 0.0, 2.0, 10.0}) {
        const MomentumProblem prob{s1, 0.5, 1.0, 0.01};
        worst = std::max(worst, std::abs(fit_top_decade_slope(integrate_branch(prob, Branch::fast_decay)) + 10.0 / 3.0));
        worst = std::max(worst, std::abs(fit_top_decade_slope(integrate_branch(prob, Branch::slow_decay)) + 2.0));
    }
    double worst_u = 0.0;
    for (double s1 : {0.0, 0.75, 2.0, 6.0}) {
        const MomentumProblem prob{s1, 0.5, 1.0, 0.0};
        const double nu = std::sqrt(0.25 + s1);
        worst_u = std::max(worst_u,
                           std::abs(fit_top_decade_slope(integrate_branch(prob, Branch::fast_decay)) + 2.5 + nu));
        worst_u = std::max(worst_u,
                           std::abs(fit_top_decade_slope(integrate_branch(prob, Branch::slow_decay)) + 2.5 - nu));
    }
    return {worst <= tol && worst_u <= tol,
            "deformed slope error " + str(worst) + ", undeformed " + str(worst_u) + ", tol " + str(tol)};
}

Outcome c8() {
    constexpr double tol = 1e-12;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> s1(-3.0, 20.0), s2(0.0, 5.0), lk(-2.0, 2.0), lb(-6.0, 0.0);
    double worst = 0.0;
    int draws = 0;
    while (draws < 1000) {
        const MomentumProblem prob{s1(rng), s2(rng), std::pow(10.0, lk(rng)), std::pow(10.0, lb(rng))};
        try {
            for (HeunVariant v : {HeunVariant::as_printed, HeunVariant::dimensional}) {
                const HeunParams h = heun_params_general(prob, v);
                worst = std::max(worst, std::abs((h.a + h.b + 1.0) - (h.c + h.d + h.e + h.f)));
            }
            const HeunParamsIS h = heun_params_inverse_square(prob.sigma1, 1.0, -prob.k * prob.k / 2.0, prob.beta);
            worst = std::max(worst, std::abs((h.a + h.b + 1.0) - (h.c + h.d + h.e)));
            ++draws;
        } catch (const PoleError&) {
        }
    }
    return {worst <= tol, "1000 draws, worst defect " + str(worst) + ", tol " + str(tol)};
}

Outcome c9() {
    // De and mu fixed, re grows with gamma; beta mu De fixed.
    constexpr double lo = 11.0, hi = 21.0;
    const QuantumNumbers qn{1, 2};
    const Molecule base = molecule_for(50.0);
    const double beta = 1e-3 / (base.mu_si() * base.De_si());
    std::vector<double> res;
    for (double g : {50.0, 100.0, 200.0}) {
        const Molecule m = molecule_for(g, g / 50.0);
        res.push_back(std::abs(energy_expansion(m, beta, qn) - energy_deformed(m, beta, qn).e) / m.De_si());
    }
    const double r1 = res[0] / res[1], r2 = res[1] / res[2];
    return {r1 >= lo && r1 <= hi && r2 >= lo && r2 <= hi,
            "(n,l) = (1,2), ratios " + str(r1) + ", " + str(r2) + ", window [" + str(lo) + ", " + str(hi) + "]"};
}

Outcome c10() {
    constexpr double tol_norm = 1e-8, tol_orth = 1e-7;
    double worst_n = 0.0, worst_o = 0.0;
    int bad_nodes = 0;
    for (double g : gamma_grid) {
        const Molecule m = molecule_for(g);
        for (int l = 0; l <= 2; ++l) {
            std::vector<RadialState> st;
            for (int n = 0; n <= 6; ++n) st.push_back(make_radial_state(m, {n, l}));
            for (int i = 0; i <= 4; ++i) {
                worst_n = std::max(worst_n, std::abs(expectation_inverse_power(0, st[i]).value - 1.0));
                for (int j = i + 1; j <= 4; ++j) worst_o = std::max(worst_o, std::abs(overlap(st[i], st[j]).value));
            }
            for (int n = 0; n <= 6; ++n) {
                const double r_max = 8.0 * (n + st[n].shape.lambda) * m.re_si() / st[n].shape.alpha;
                int nodes = 0, prev = 0;
                for (int i = 1; i <= 20000; ++i) {
                    const int s = radial_log(st[n], r_max * i / 20000.0).sign;
                    if (s != 0 && prev != 0 && s != prev) ++nodes;
                    if (s != 0) prev = s;
                }
                bad_nodes += nodes != n;
            }
        }
    }
    return {worst_n <= tol_norm && worst_o <= tol_orth && bad_nodes == 0,
            "norm worst " + str(worst_n) + ", overlap worst " + str(worst_o) + ", node mismatches "
                + std::to_string(bad_nodes)};
}

Outcome c11() {
    constexpr double tol = 1e-6;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int ok = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double gamma = 10.0 + 40.0 * u01(rng);
        const double mu = 0.5 + 19.5 * u01(rng);
        const Molecule m = molecule_for(gamma, 0.6 + 2.0 * u01(rng), mu);
        const double beta = (0.2 + 2.0 * u01(rng)) * 1e-3 / (m.mu_si() * m.De_si());
        std::vector<LevelObservation> levels;
        for (int n = 0; n <= 3; ++n)
            for (int l = 0; l <= 2; ++l)
                levels.push_back({n, l, energy_deformed(m, beta, {n, l}).e / units().wavenumber_to_joule, 1.0});
        const FitInit init{m.De * (0.95 + 0.1 * u01(rng)), m.re * (0.95 + 0.1 * u01(rng)), beta * (0.5 + u01(rng))};
        const FitResult r = fit_parameters(levels, mu, init);
        const double e = std::max({rel(r.De, m.De), rel(r.re, m.re), rel(r.beta, beta)});
        worst = std::max(worst, e);
        ok += e <= tol;
    }
    return {ok == 20, std::to_string(ok) + "/20 recovered, worst " + str(worst) + ", tol " + str(tol)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"H2 zero-point energy", c1},           {"minimal-length bound", c2},
    {"oracle equivalence", c3},             {"dual-formula identity", c4},
    {"hydrogen limit", c5},                 {"quantization consistency", c6},
    {"asymptotic exponents", c7},           {"Fuchsian conditions", c8},
    {"expansion order", c9},                {"wavefunction suite", c10},
    {"fit round trip", c11},
};

bool run_one(int i) {
    const auto& [name, fn] = criteria[static_cast<std::size_t>(i - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-26s %s  %s  (%.1f s)\n", i, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    const int total = static_cast<int>(criteria.size());
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        const int i = std::atoi(argv[2]);
        if (i < 1 || i > total) {
            std::fprintf(stderr, "criterion must be 1..%d\n", total);
            return 2;
        }
        return run_one(i) ? 0 : 1;
    }
    if (argc != 1) {
        std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
        return 2;
    }
    int failed = 0;
    for (int i = 1; i <= total; ++i) failed += !run_one(i);
    return failed == 0 ? 0 : 1;
}
