#include "doctest.h"
#include "kratzer/errors.hpp"
#include "kratzer/oracle.hpp"
#include "kratzer/quadrature.hpp"
#include "kratzer/spectrum.hpp"
#include "support.hpp"

using namespace kratzer;
using testing::rel;

TEST_CASE("Gauss-Kronrod on smooth integrands") {
    const auto r = quad::gauss_kronrod([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-13, 0.0, 100);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2.0) < 1e-13);
    const auto s = quad::gauss_kronrod([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10, 0.0, 500);
    CHECK(s.converged);
    CHECK(rel(s.value, 2.0 / 3.0) < 1e-10);
    const auto bad = quad::gauss_kronrod([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 0.0, 2);
    CHECK_FALSE(bad.converged);
}

TEST_CASE("Gauss-Laguerre moments") {
    for (double alpha : {0.0, 0.5, 3.7, 40.0}) {
        const auto rule = quad::gauss_laguerre(32, alpha);
        REQUIRE(rule.nodes.size() == 32);
        double m0 = 0.0, m1 = 0.0, m3 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w = std::exp(rule.log_weights[i] - std::lgamma(alpha + 1.0));
            m0 += w;
            m1 += w * rule.nodes[i];
            m3 += w * std::pow(rule.nodes[i], 3);
        }
        CHECK(rel(m0, 1.0) < 1e-12);
        CHECK(rel(m1, alpha + 1.0) < 1e-12);
        CHECK(rel(m3, (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0)) < 1e-11);
    }
    CHECK_THROWS(quad::gauss_laguerre(0, 0.0));
    CHECK_THROWS(quad::gauss_laguerre(4, -1.0));
}

TEST_CASE("moments agree with the closed forms for both schemes") {
    QuadratureSpec gl;
    gl.scheme = QuadratureScheme::gauss_laguerre;
    for (double g : {2.0, 10.0, 35.755}) {
        const Molecule m = testing::molecule_for(g);
        const KratzerCouplings c = couplings_from_kratzer(m);
        const double scale = m.mu_si() * c.g2 / (units().hbar * units().hbar);
        for (int n = 0; n <= 3; ++n)
            for (int l = 0; l <= 3; ++l) {
                const QuantumNumbers qn{n, l};
                const RadialState st = make_radial_state(m, qn);
                for (int p = 0; p <= 4; ++p) {
                    const double closed = p == 0 ? 1.0 : matrix_element_closed(p, qn, st.shape, scale);
                    const Estimate a = expectation_inverse_power(p, st);
                    const Estimate b = expectation_inverse_power(p, st, gl);
                    CHECK(rel(a.value, closed) < 1e-8);
                    CHECK(rel(b.value, closed) < 1e-8);
                    CHECK(a.error <= 1e-8 * std::abs(a.value));
                }
            }
    }
}

TEST_CASE("potential expectations and the first-order correction") {
    const Molecule m = testing::h2();
    const KratzerCouplings c = couplings_from_kratzer(m);
    const double scale = m.mu_si() * c.g2 / (units().hbar * units().hbar);
    for (int n = 0; n <= 2; ++n)
        for (int l = 0; l <= 2; ++l) {
            const QuantumNumbers qn{n, l};
            const RadialState st = make_radial_state(m, qn);
            auto mom = [&](int p) { return matrix_element_closed(p, qn, st.shape, scale); };
            const double v = c.g1 * mom(2) - c.g2 * mom(1);
            const double v2 = c.g1 * c.g1 * mom(4) - 2.0 * c.g1 * c.g2 * mom(3) + c.g2 * c.g2 * mom(2);
            CHECK(rel(expectation_potential(st, c).value, v) < 1e-8);
            CHECK(rel(expectation_potential_sq(st, c).value, v2) < 1e-8);
            const double beta = 1e43;
            CHECK(rel(correction_via_expectations(st, c, m.mu_si(), beta), correction_general(c, m.mu_si(), beta, qn))
                  < 1e-7);
        }
}

TEST_CASE("oracle input checks") {
    const Molecule m = testing::molecule_for(0.5);
    const RadialState st = make_radial_state(m, {0, 0});
    CHECK_THROWS_AS(expectation_inverse_power(4, st), InvalidInput);
    CHECK_THROWS_AS(expectation_inverse_power(5, st), InvalidInput);

    QuadratureSpec tight;
    tight.rel_tol = 1e-13;
    CHECK_THROWS_AS(validate(tight), InvalidInput);
    QuadratureSpec zero;
    zero.max_intervals = 0;
    CHECK_THROWS_AS(validate(zero), InvalidInput);

    QuadratureSpec starved;
    starved.rel_tol = 1e-12;
    starved.max_intervals = 1;
    const RadialState hs = make_radial_state(testing::h2(), {4, 3});
    try {
        expectation_inverse_power(3, hs, starved);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("overlap") {
    const Molecule m = testing::molecule_for(10.0);
    const RadialState a = make_radial_state(m, {0, 1});
    const RadialState b = make_radial_state(m, {3, 1});
    CHECK(std::abs(overlap(a, b).value) < 1e-9);
    CHECK(std::abs(overlap(a, a).value - 1.0) < 1e-9);
}

TEST_CASE("error estimates are honest") {
    for (double g : {2.0, 35.755}) {
        const Molecule m = testing::molecule_for(g);
        for (int p = 0; p <= 4; ++p) {
            const RadialState st = make_radial_state(m, {3, 2});
            QuadratureSpec loose;
            loose.rel_tol = 1e-8;
            QuadratureSpec tight;
            tight.rel_tol = 1e-10;
            const Estimate a = expectation_inverse_power(p, st, loose);
            const Estimate b = expectation_inverse_power(p, st, tight);
            CHECK(std::abs(a.value - b.value) <= a.error);
        }
    }
}

TEST_CASE("expectation path is linear in beta") {
    const Molecule m = testing::h2();
    const KratzerCouplings c = couplings_from_kratzer(m);
    const RadialState st = make_radial_state(m, {1, 1});
    for (double beta : {1e-50, 1e-46, 1e-42}) {
        const double d1 = correction_via_expectations(st, c, m.mu_si(), beta);
        const double d2 = correction_via_expectations(st, c, m.mu_si(), 2.0 * beta);
        CHECK(d2 == 2.0 * d1);
    }
}
