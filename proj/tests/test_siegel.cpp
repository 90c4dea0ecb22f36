#include "doctest.h"

#include <stdexcept>

#include "thetakit/random.h"
#include "thetakit/sampling.h"
#include "thetakit/siegel.h"

using namespace thetakit;

namespace {

IntMatrix symmetric(int g, std::initializer_list<std::int64_t> upper) {
    IntMatrix m(g);
    auto it = upper.begin();
    for (int j = 0; j < g; ++j)
        for (int l = j; l < g; ++l) m(j, l) = m(l, j) = *it++;
    return m;
}

double max_diff(const CMatrix& x, const CMatrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

bool positive_imaginary(const SiegelPoint& tau) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tau.tau().imag());
    return es.eigenvalues().minCoeff() > 0;
}

}  // namespace

TEST_CASE("SiegelPoint mirrors the upper triangle and checks positivity") {
    CMatrix m(2, 2);
    m << cplx(0.1, 1.2), cplx(0.3, 0.2), cplx(99, 99), cplx(-0.4, 0.9);
    const SiegelPoint tau(m);
    CHECK(tau(1, 0) == tau(0, 1));
    CHECK(tau(1, 0) == cplx(0.3, 0.2));
    CHECK(tau.lambda_min() > 0.5);

    CMatrix bad(2, 2);
    bad << cplx(0, 1), cplx(0, 2), cplx(0, 2), cplx(0, 1);
    CHECK_THROWS_AS(SiegelPoint{bad}, std::domain_error);
    CHECK_THROWS_AS(SiegelPoint::scalar(1, cplx(1, -1)), std::domain_error);

    const auto shifted = tau.shifted(0, 1, cplx(0.5, 0));
    CHECK(shifted(0, 1) == cplx(0.8, 0.2));
    CHECK(shifted(1, 0) == cplx(0.8, 0.2));
}

TEST_CASE("JSON round trip") {
    SamplePlan plan;
    for (int g = 1; g <= 3; ++g) {
        const auto tau = plan.tau(g, 3);
        const auto back = siegel_point_from_json(to_json(tau));
        CHECK(back.tau() == tau.tau());
    }
    nlohmann::json asym = {{"genus", 2}, {"tau", {{0, 1}, {0.1, 0}, {0.2, 0}, {0, 1}}}};
    CHECK_THROWS_AS(siegel_point_from_json(asym), std::invalid_argument);
    nlohmann::json short_list = {{"genus", 2}, {"tau", {{0, 1}, {0, 0}, {0, 1}}}};
    CHECK_THROWS_AS(siegel_point_from_json(short_list), std::invalid_argument);
    nlohmann::json lower = {{"genus", 1}, {"tau", {{0, -1}}}};
    CHECK_THROWS_AS(siegel_point_from_json(lower), std::domain_error);
}

TEST_CASE("derivation indices") {
    CHECK(DerivationIndex(0, 0).normalization() == 1.0 / (kPi * kI));
    CHECK(DerivationIndex(0, 1).normalization() == 1.0 / (2.0 * kPi * kI));
    CHECK(DerivationIndex(1, 0).j == 0);
    for (int g = 1; g <= 3; ++g)
        for (int k = 0; k < derivation_count(g); ++k) CHECK(DerivationIndex::from_flat(g, k).flat(g) == k);
    CHECK(DerivationIndex::from_flat(2, 2).j == 0);
    CHECK(DerivationIndex::from_flat(2, 2).l == 1);
}

TEST_CASE("symplectic checks are exact") {
    CHECK(is_symplectic(SymplecticMatrix::identity(3).matrix()));
    IntMatrix bad = IntMatrix::identity(4);
    bad(0, 1) = 1;
    CHECK_FALSE(is_symplectic(bad));
    CHECK_THROWS_AS(SymplecticMatrix{bad}, std::invalid_argument);

    IntMatrix asym(2);
    asym(0, 1) = 4;
    CHECK_THROWS_AS(SymplecticMatrix::upper_unipotent(asym), std::invalid_argument);
}

TEST_CASE("Gamma(4,8) membership") {
    CHECK(is_in_gamma_48(SymplecticMatrix::identity(2)));
    CHECK(is_in_gamma_48(SymplecticMatrix::upper_unipotent(symmetric(2, {8, 4, -16}))));
    CHECK(is_in_gamma_48(SymplecticMatrix::lower_unipotent(symmetric(2, {8, 0, 0}))));
    CHECK_FALSE(is_in_gamma_48(SymplecticMatrix::upper_unipotent(symmetric(2, {4, 0, 8}))));
    CHECK_FALSE(is_in_gamma_48(SymplecticMatrix::lower_unipotent(symmetric(2, {8, 2, 8}))));
    CHECK_FALSE(is_in_gamma_48(SymplecticMatrix::upper_unipotent(symmetric(1, {1}))));
}

TEST_CASE("random words are in Gamma(4,8), closed under products and inverses") {
    CHECK_THROWS_AS(random_gamma_48(2, 1, 0), std::invalid_argument);
    for (int g = 1; g <= 3; ++g)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto x = random_gamma_48(g, seed, 1 + static_cast<int>(seed % 3));
            const auto y = random_gamma_48(g, seed + 100, 2);
            CHECK(is_symplectic(x.matrix()));
            CHECK(is_in_gamma_48(x));
            CHECK(is_in_gamma_48(x * y));
            CHECK(is_in_gamma_48(x.inverse()));
            CHECK((x * x.inverse()).matrix() == IntMatrix::identity(2 * g));
        }
    CHECK(random_gamma_48(2, 5, 3).matrix() == random_gamma_48(2, 5, 3).matrix());
}

TEST_CASE("action of the identity and of translations") {
    SamplePlan plan;
    const auto tau = plan.tau(2, 0);
    CHECK(max_diff(act(SymplecticMatrix::identity(2), tau).tau(), tau.tau()) == 0.0);
    const auto b = symmetric(2, {8, 4, 0});
    const auto moved = act(SymplecticMatrix::upper_unipotent(b), tau);
    CMatrix expected = tau.tau();
    expected(0, 0) += 8.0;
    expected(0, 1) += 4.0;
    expected(1, 0) += 4.0;
    CHECK(max_diff(moved.tau(), expected) < 1e-12);
    CHECK(max_diff(cocycle_factor(SymplecticMatrix::upper_unipotent(b), tau), CMatrix::Identity(2, 2)) == 0.0);
    CHECK(max_diff(cocycle_factor(SymplecticMatrix::identity(2), tau), CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("genus-1 imaginary part transforms by |c tau + d|^-2") {
    SamplePlan plan;
    for (int i = 0; i < 10; ++i) {
        const auto gamma = random_gamma_48(1, i, 2);
        const cplx t = plan.scalar_tau(i);
        const auto image = act(gamma, SiegelPoint::scalar(1, t));
        const double expected = t.imag() / std::norm(static_cast<double>(gamma.c()(0, 0)) * t +
                                                     static_cast<double>(gamma.d()(0, 0)));
        CHECK(image(0, 0).imag() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(image(0, 0).imag() > 0);
    }
}

TEST_CASE("action is a group action and the cocycle satisfies the chain rule") {
    SamplePlan plan;
    plan.seed = 11;
    for (int g = 1; g <= 3; ++g)
        for (int i = 0; i < 8; ++i) {
            const auto tau = plan.tau(g, i);
            const auto x = random_gamma_48(g, plan.stream(i, 1), 1);
            const auto y = random_gamma_48(g, plan.stream(i, 2), 1);
            const auto composed = act(x * y, tau);
            const auto stepwise = act(x, act(y, tau));
            const double scale = composed.tau().cwiseAbs().maxCoeff();
            CHECK(max_diff(composed.tau(), stepwise.tau()) < 1e-10 * scale);
            CHECK(positive_imaginary(composed));

            const CMatrix lhs = cocycle_factor(x * y, tau);
            const CMatrix rhs = cocycle_factor(x, act(y, tau)) * cocycle_factor(y, tau);
            CHECK(max_diff(lhs, rhs) < 1e-10 * lhs.cwiseAbs().maxCoeff());
        }
}
