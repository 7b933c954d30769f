#include <random>

#include "doctest.h"
#include "kratzer/errors.hpp"
#include "kratzer/spectrum.hpp"
#include "support.hpp"

using namespace kratzer;
using testing::rel;

namespace {

double hbar() { return units().hbar; }

}  // namespace

TEST_CASE("unperturbed levels") {
    const Molecule m = testing::molecule_for(2.0);
    // -4 De / lambda^2, lambda = 1/2 + sqrt(17/4)
    CHECK(rel(energy_unperturbed(m, {0, 0}) / m.De_si(), -0.60961179679779243127) < 1e-14);

    const Molecule h = testing::h2();
    const KratzerCouplings c = couplings_from_kratzer(h);
    for (int n = 0; n < 5; ++n)
        for (int l = 0; l < 5; ++l)
            CHECK(rel(energy_unperturbed(c, h.mu_si(), {n, l}), energy_unperturbed(h, {n, l})) < 1e-13);

    // Coulomb limit.
    const double mu = units().amu_to_kg;
    const KratzerCouplings coul{0.0, 2.3e-28};
    const double e = energy_unperturbed(coul, mu, {1, 1});
    CHECK(rel(e, -mu * coul.g2 * coul.g2 / (2.0 * hbar() * hbar() * 9.0)) < 1e-14);
}

TEST_CASE("closed-form moments") {
    const QuantumNumbers g0{0, 0};
    const ShapeNumbers s = shape_numbers(2.0, g0);
    CHECK(rel(matrix_element_closed(1, g0, s, 1.0), 0.15240294919944810782) < 1e-14);
    CHECK(matrix_element_closed(1, g0, s, 1.0) == doctest::Approx(0.152404).epsilon(1e-5));
    const QuantumNumbers n1{1, 0};
    CHECK(rel(matrix_element_closed(2, n1, shape_numbers(2.0, n1), 1.0), 0.010737109170627023956) < 1e-14);

    // gamma = 0: lambda = l + 1 reproduces the Coulomb <1/r^2>.
    for (int l = 0; l < 4; ++l)
        for (int n = 0; n < 4; ++n) {
            const QuantumNumbers qn{n, l};
            const double np = qn.principal();
            CHECK(rel(matrix_element_closed(2, qn, shape_numbers(0.0, qn), 3.0), 9.0 / ((l + 0.5) * np * np * np))
                  < 1e-14);
        }

    CHECK_THROWS_AS(matrix_element_closed(5, g0, s, 1.0), InvalidInput);
}

TEST_CASE("lambda guard") {
    const double gamma = std::sqrt((1.0 + 5e-7) * (1.0 + 5e-7) - 0.25);  // lambda = 3/2 + 5e-7
    const QuantumNumbers qn{0, 0};
    const ShapeNumbers s = shape_numbers(gamma, qn);
    CHECK(s.near_singular);
    CHECK_THROWS_AS(matrix_element_closed(4, qn, s, 1.0), NearSingularLambda);
    CHECK_NOTHROW(matrix_element_closed(3, qn, s, 1.0));
    try {
        matrix_element_closed(4, qn, s, 1.0);
    } catch (const NearSingularLambda& e) {
        CHECK(e.pole() == 1.5);
    }
    const Molecule m = testing::molecule_for(gamma);
    CHECK_THROWS_AS(energy_deformed(m, 1e-40, qn), NearSingularLambda);
}

TEST_CASE("correction basics") {
    const Molecule m = testing::h2();
    const KratzerCouplings c = couplings_from_kratzer(m);
    CHECK(correction_general(c, m.mu_si(), 0.0, {0, 0}) == 0.0);
    const double d1 = correction_general(c, m.mu_si(), 1e43, {2, 1});
    const double d2 = correction_general(c, m.mu_si(), 2e43, {2, 1});
    CHECK(d1 > 0.0);
    CHECK(rel(d2, 2.0 * d1) < 1e-15);
    CHECK_THROWS_AS(correction_general(c, m.mu_si(), -1.0, {0, 0}), InvalidInput);

    const EnergyLevel lv = energy_deformed(m, 0.0, {0, 0});
    CHECK(lv.de == 0.0);
    CHECK(lv.e == lv.e0);
    CHECK_FALSE(lv.perturbative_warning);
    CHECK(energy_deformed(m, 1e50, {0, 0}).perturbative_warning);
}

TEST_CASE("molecular form equals the general form plus correction") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Molecule m;
        m.De = std::pow(10.0, 3.0 + 2.0 * u01(rng));
        m.re = 0.5 + 2.5 * u01(rng);
        m.mu = 0.5 + 49.5 * u01(rng);
        const QuantumNumbers qn{static_cast<int>(11 * u01(rng)), static_cast<int>(11 * u01(rng))};
        const double beta = std::pow(10.0, -50.0 + 8.0 * u01(rng));
        const EnergyLevel lv = energy_deformed(m, beta, qn);
        const KratzerCouplings c = couplings_from_kratzer(m);
        const double other = energy_unperturbed(c, m.mu_si(), qn) + correction_general(c, m.mu_si(), beta, qn);
        worst = std::max(worst, rel(lv.e, other));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("hydrogen limit") {
    const double mu = units().amu_to_kg;
    const double g2 = 2.3e-28;
    const double a0 = hbar() * hbar() / (mu * g2);
    const double beta = 1e40;
    for (int l = 1; l <= 4; ++l)
        for (int n = 0; n <= 4; ++n) {
            const QuantumNumbers qn{n, l};
            const double ref = correction_hydrogen_limit(g2, mu, beta, qn);
            CHECK(rel(correction_general({1e-9 * g2 * a0, g2}, mu, beta, qn), ref) < 1e-6);
            CHECK(correction_general({0.0, g2}, mu, beta, qn) == ref);
        }
    // s-waves: lambda -> 1 falls under the 3/2 guard for vanishing g1.
    CHECK_THROWS_AS(correction_general({1e-9 * g2 * a0, g2}, mu, beta, {0, 0}), NearSingularLambda);
}

TEST_CASE("expansion terms") {
    const Molecule m = testing::h2();
    const double beta = 1e43;
    const auto terms = term_decomposition(m, beta, {1, 2});
    REQUIRE(terms.size() == 10);
    CHECK(terms.front().kind == TermKind::well_depth);
    CHECK(terms.front().value == -m.De_si());
    double sum = 0.0;
    for (const auto& t : terms) sum += t.value;
    CHECK(sum == energy_expansion(m, beta, {1, 2}));
    CHECK(term_name(TermKind::ml_coupling) == "ml-coupling");

    // beta = 0 leaves the minimal-length terms at zero.
    for (const auto& t : term_decomposition(m, 0.0, {1, 2}))
        if (t.kind == TermKind::ml_anharmonic || t.kind == TermKind::ml_harmonic || t.kind == TermKind::ml_coupling)
            CHECK(t.value == 0.0);

    // Ground state of H2: within 1e-5 De of the exact level.
    CHECK(std::abs(energy_expansion(m, 0.0, {0, 0}) - energy_deformed(m, 0.0, {0, 0}).e) < 1e-5 * m.De_si());
}

TEST_CASE("expansion residual is fourth order in 1/gamma") {
    // Fixed De and mu; gamma grows with re. (n, l) = (1, 2) has a non-vanishing
    // 1/gamma^4 coefficient in both the beta = 0 and the beta parts.
    for (double beta_scale : {0.0, 1e-3}) {
        double prev = 0.0;
        for (double g : {50.0, 100.0, 200.0, 400.0}) {
            const Molecule m = testing::molecule_for(g, g / 50.0);
            const double beta = beta_scale / (m.mu_si() * m.De_si());
            const double res = std::abs(energy_expansion(m, beta, {1, 2}) - energy_deformed(m, beta, {1, 2}).e)
                               / m.De_si();
            if (prev > 0.0) {
                CHECK(prev / res > 11.0);
                CHECK(prev / res < 21.0);
            }
            prev = res;
        }
    }
}

TEST_CASE("hydrogen-limit deviation shrinks in proportion to g1") {
    const double mu = units().amu_to_kg, g2 = 2.3e-28, beta = 1e40;
    const double a0 = units().hbar * units().hbar / (mu * g2);
    for (int l = 1; l <= 3; ++l) {
        const QuantumNumbers qn{1, l};
        const double ref = correction_hydrogen_limit(g2, mu, beta, qn);
        const double d6 = rel(correction_general({1e-6 * g2 * a0, g2}, mu, beta, qn), ref);
        const double d9 = rel(correction_general({1e-9 * g2 * a0, g2}, mu, beta, qn), ref);
        CHECK(d6 / d9 == doctest::Approx(1e3).epsilon(0.01));
    }
}

TEST_CASE("correction is positive above lambda = 3/2") {
    for (double g : {2.0, 5.0, 10.0, 35.755}) {
        const Molecule m = testing::molecule_for(g);
        const KratzerCouplings c = couplings_from_kratzer(m);
        for (int n = 0; n <= 5; ++n)
            for (int l = 0; l <= 5; ++l) CHECK(correction_general(c, m.mu_si(), 1e-46, {n, l}) > 0.0);
    }
}
