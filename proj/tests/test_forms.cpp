#include "doctest.h"

#include "thetakit/forms.h"
#include "thetakit/random.h"

using namespace thetakit;

namespace {

cplx random_cplx(Rng& rng) { return {rng.uniform(-1, 1), rng.uniform(-1, 1)}; }

SymmetricForm random_form(int g, Rng& rng) {
    CMatrix m(g, g);
    for (int j = 0; j < g; ++j)
        for (int l = 0; l < g; ++l) m(j, l) = random_cplx(rng);
    return SymmetricForm(m);
}

CVector random_vector(int g, Rng& rng) {
    CVector u(g);
    for (int j = 0; j < g; ++j) u(j) = random_cplx(rng);
    return u;
}

}  // namespace

TEST_CASE("quartic key counts and multiplicities") {
    CHECK(quartic_keys(1).size() == 1);
    CHECK(quartic_keys(2).size() == 5);
    CHECK(quartic_keys(3).size() == 15);
    for (int g = 1; g <= 3; ++g) {
        int total = 0;
        for (const auto& key : quartic_keys(g)) total += quartic_multiplicity(key);
        CHECK(total == g * g * g * g);
    }
    CHECK(quartic_multiplicity({0, 0, 0, 0}) == 1);
    CHECK(quartic_multiplicity({0, 0, 1, 1}) == 6);
    CHECK(quartic_multiplicity({0, 1, 2, 2}) == 12);
}

TEST_CASE("symmetric form takes the upper triangle") {
    CMatrix m(2, 2);
    m << 1.0, 2.0, 7.0, 3.0;
    const SymmetricForm f(m);
    CHECK(f(1, 0) == cplx(2.0));
    CVector u(2);
    u << 1.0, 1.0;
    CHECK(f.evaluate(u) == cplx(1.0 + 2.0 * 2.0 + 3.0));
    SymmetricForm g(2);
    g.set(1, 0, 5.0);
    CHECK(g(0, 1) == cplx(5.0));
}

TEST_CASE("product and square evaluate as polynomial products") {
    Rng rng(4);
    for (int g = 1; g <= 3; ++g)
        for (int trial = 0; trial < 10; ++trial) {
            const auto phi = random_form(g, rng);
            const auto eta = random_form(g, rng);
            const auto prod = phi.product(eta);
            const auto sq = phi.square();
            for (int k = 0; k < 3; ++k) {
                const CVector u = random_vector(g, rng);
                CHECK(std::abs(prod.evaluate(u) - phi.evaluate(u) * eta.evaluate(u)) < 1e-12);
                CHECK(std::abs(sq.evaluate(u) - phi.evaluate(u) * phi.evaluate(u)) < 1e-12);
            }
        }
}

TEST_CASE("quartic forms are fully symmetric and linear") {
    Rng rng(5);
    const int g = 3;
    QuarticForm f(g);
    f.set(2, 0, 1, 0, 3.0);
    CHECK(f(0, 0, 1, 2) == cplx(3.0));
    CHECK(f(1, 2, 0, 0) == cplx(3.0));
    CHECK(f.at({0, 0, 1, 2}) == cplx(3.0));

    const auto a = random_form(g, rng).square();
    const auto b = random_form(g, rng).product(random_form(g, rng));
    const CVector u = random_vector(g, rng);
    const cplx s(0.5, -2.0);
    CHECK(std::abs((a + b * s).evaluate(u) - (a.evaluate(u) + s * b.evaluate(u))) < 1e-12);
    CHECK(std::abs((a - a).max_abs()) == 0.0);
    QuarticForm acc(g);
    acc += a;
    CHECK((acc - a).max_abs() == 0.0);
}

TEST_CASE("symmetrize averages over orderings") {
    const auto sym = QuarticForm::symmetrize(2, [](int j, int l, int, int) { return (j == 0 && l == 1) ? 1.0 : 0.0; });
    Rng rng(6);
    const CVector u = random_vector(2, rng);
    // the polynomial is u_0 u_1 (u_0 + u_1)^2 regardless of symmetrization
    const cplx expected = u(0) * u(1) * (u(0) + u(1)) * (u(0) + u(1));
    CHECK(std::abs(sym.evaluate(u) - expected) < 1e-14);
}
