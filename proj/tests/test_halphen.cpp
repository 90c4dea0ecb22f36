#include "doctest.h"

#include <stdexcept>

#include "oracles.h"
#include "thetakit/halphen.h"
#include "thetakit/sampling.h"

using namespace thetakit;

namespace {

double state_error(const HalphenState& x, const HalphenState& y) {
    return std::max({std::abs(x.psi10 - y.psi10), std::abs(x.psi00 - y.psi00), std::abs(x.psi01 - y.psi01)});
}

cplx thetanull1(const char* label, cplx tau) {
    return thetanull(Characteristic::parse(label, 1), SiegelPoint::scalar(1, tau));
}

}  // namespace

TEST_CASE("right-hand sides") {
    const cplx p(0.3, -1.1);
    for (const cplx v : halphen_rhs({kI, p, p, p})) CHECK(std::abs(v - 2.0 * p * p) < 1e-15);

    const HalphenState s{kI, cplx(0.2, 0.1), cplx(-0.7, 0.4), cplx(1.3, -0.2)};
    const auto rhs = halphen_rhs(s);
    const cplx sum = rhs[0] + rhs[1] + rhs[2];
    const cplx expected = 2.0 * (s.psi10 * s.psi00 + s.psi00 * s.psi01 + s.psi10 * s.psi01);
    CHECK(std::abs(sum - expected) < 1e-14);
}

TEST_CASE("right-hand sides match finite differences of the series psi at i") {
    const auto rhs = halphen_rhs(theta_seeded_state(kI));
    const double h = 1e-5;
    const auto plus = theta_seeded_state(kI + h), minus = theta_seeded_state(kI - h);
    const cplx norm = 1.0 / (kPi * kI);
    CHECK(std::abs(norm * (plus.psi10 - minus.psi10) / (2 * h) - rhs[0]) < 1e-7);
    CHECK(std::abs(norm * (plus.psi00 - minus.psi00) / (2 * h) - rhs[1]) < 1e-7);
    CHECK(std::abs(norm * (plus.psi01 - minus.psi01) / (2 * h) - rhs[2]) < 1e-7);
}

TEST_CASE("integration preconditions and the zero-length path") {
    const auto start = theta_seeded_state(kI);
    const auto same = integrate(start, kI, 10);
    CHECK(state_error(same, start) == 0.0);
    CHECK(same.tau == kI);
    CHECK_THROWS_AS(integrate(start, 2.0 * kI, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(start, cplx(0, -1), 10), std::domain_error);
}

TEST_CASE("RK4 from i to 2i reproduces the series psi") {
    const auto start = theta_seeded_state(kI);
    const auto target = theta_seeded_state(2.0 * kI);
    const auto end = integrate(start, 2.0 * kI, 10000);
    CHECK(end.tau == 2.0 * kI);
    CHECK(state_error(end, target) < 1e-6);

    // the theta^4 parametrization is preserved along the way
    const cplx th00 = thetanull1("00", 2.0 * kI);
    CHECK(std::abs(4.0 * (end.psi10 - end.psi01) - std::pow(th00, 4)) < 1e-6);
}

TEST_CASE("RK4 has order four") {
    const auto start = theta_seeded_state(kI);
    const auto target = theta_seeded_state(2.0 * kI);
    const double coarse = state_error(integrate(start, 2.0 * kI, 40), target);
    const double fine = state_error(integrate(start, 2.0 * kI, 80), target);
    const double ratio = coarse / fine;
    INFO("coarse " << coarse << ", fine " << fine);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("theta^4 difference formulas and Jacobi's identity") {
    const auto at_i = theta4_differences(kI);
    for (double r : at_i.formulas) CHECK(r < 1e-10);
    CHECK(at_i.jacobi < 1e-10);
    CHECK(std::abs(thetanull1("01", kI) - thetanull1("10", kI)) < 1e-15);

    SamplePlan plan;
    for (int i = 0; i < 20; ++i) {
        const auto r = theta4_differences(plan.scalar_tau(i));
        for (double f : r.formulas) CHECK(f < 1e-10);
        CHECK(r.jacobi < 1e-10);
    }
}

TEST_CASE("Legendre lambda at i and the hypergeometric period") {
    const cplx lambda = legendre_lambda(kI);
    CHECK(std::abs(lambda - 0.5) < 1e-15);

    const auto reference = oracle::hypergeometric_series(0.5, 0.5, 1, 0.5);
    const double th00 = static_cast<double>(oracle::theta00_at_i_closed_form());
    CHECK(std::abs(static_cast<double>(reference) - th00 * th00) < 1e-30);
    CHECK(static_cast<double>(reference) == doctest::Approx(1.1803405990).epsilon(1e-10));

    const cplx f = hypergeometric_2f1(0.5, 0.5, 1.0, lambda);
    CHECK(std::abs(f - static_cast<double>(reference)) < 1e-14);
    CHECK(std::abs(f - std::pow(thetanull1("00", kI), 2)) < 1e-9);
}

TEST_CASE("hypergeometric evaluation against the 50-digit series") {
    for (double z : {-0.95, -0.5, 0.0, 0.3, 0.7, 0.85, 0.9}) {
        for (auto [a, b] : {std::pair{0.5, 0.5}, std::pair{-0.5, 0.5}}) {
            const auto ref = oracle::hypergeometric_series(a, b, 1, z, 5000);
            CHECK(std::abs(hypergeometric_2f1(a, b, 1.0, z) - static_cast<double>(ref)) < 1e-14);
        }
    }
    // direct series up to |z| = 0.9, Pfaff's transformation where |z / (z - 1)| <= 0.9
    CHECK(hypergeometric_supported(cplx(0.9, 0)));
    CHECK(hypergeometric_supported(cplx(-5.0, 0)));
    CHECK_FALSE(hypergeometric_supported(cplx(0.95, 0)));
    CHECK_FALSE(hypergeometric_supported(cplx(5.0, 0)));
    CHECK_THROWS_AS(hypergeometric_2f1(0.5, 0.5, 1.0, cplx(0.95, 0)), std::domain_error);
}

TEST_CASE("large Im tau limit") {
    const cplx t(0.1, 8.0);
    CHECK(std::abs(thetanull1("00", t) - 1.0) < 1e-9);
    CHECK(std::abs(hypergeometric_2f1(0.5, 0.5, 1.0, legendre_lambda(t)) - 1.0) < 1e-9);
    const auto r = legendre_lambda_checks(t);
    CHECK(r.hypergeometric);
    CHECK(r.omega < 1e-9);
}

TEST_CASE("Legendre derivative identities at 20 seeded points") {
    SamplePlan plan;
    plan.seed = 17;
    for (int i = 0; i < 20; ++i) {
        const auto r = legendre_lambda_checks(plan.scalar_tau(i));
        CHECK(r.derivative_theta01 < 1e-9);
        CHECK(r.derivative_theta00 < 1e-9);
        CHECK(r.derivative_difference < 1e-8);
        if (r.hypergeometric) {
            CHECK(r.omega < 1e-9);
            CHECK(r.eta < 1e-9);
        }
    }
    const auto at_i = legendre_lambda_checks(kI);
    CHECK(at_i.hypergeometric);
    CHECK(at_i.omega < 1e-12);
    CHECK(at_i.eta < 1e-12);
}
