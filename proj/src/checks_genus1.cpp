// Genus one: the Halphen system, Legendre's lambda, and the exact
// q-expansions (which also run in genus two).

#include <cmath>

#include "checks.h"
#include "thetakit/fourier.h"
#include "thetakit/halphen.h"

namespace thetakit::checks {

namespace {

cplx scalar_point(const CheckConfig& cfg, int i) { return i == 0 ? kI : cfg.plan.scalar_tau(i); }

std::string at_tau(int i, cplx tau) {
    return "sample " + std::to_string(i) + ", tau=" + std::to_string(tau.real()) + "+" + std::to_string(tau.imag()) + "i";
}

const Characteristic& c10() {
    static const auto c = Characteristic::from_index(1, 0b10);
    return c;
}
const Characteristic& c00() {
    static const auto c = Characteristic::from_index(1, 0b00);
    return c;
}
const Characteristic& c01() {
    static const auto c = Characteristic::from_index(1, 0b01);
    return c;
}

}  // namespace

IdentityCheck halphen_theta4(const CheckConfig& cfg) {
    return sampled("halphen_theta4", cfg, [&](int i, ResidualTracker& tr) {
        const cplx tau = scalar_point(cfg, i);
        const auto r = theta4_differences(tau, cfg.eps);
        const char* names[3] = {"theta_00^4", "theta_01^4", "theta_10^4"};
        for (int k = 0; k < 3; ++k) tr.record(r.formulas[static_cast<std::size_t>(k)], 1.0, at_tau(i, tau) + ", " + names[k]);
        tr.record(r.jacobi, 1.0, at_tau(i, tau) + ", Jacobi");
    });
}

IdentityCheck halphen_system(const CheckConfig& cfg) {
    const std::array<Characteristic, 3> order = {c10(), c00(), c01()};
    const auto evens = enumerate(1, ParityFilter::even);
    return sampled("halphen_system", cfg, [&](int i, ResidualTracker& tr) {
        const cplx tau = scalar_point(cfg, i);
        const ThetanullTable t(SiegelPoint::scalar(1, tau), 4, cfg.eps);
        const HalphenState state{tau, t.psi(c10())(0, 0), t.psi(c00())(0, 0), t.psi(c01())(0, 0)};
        const auto rhs = halphen_rhs(state);
        const double psi_scale = largest({std::abs(state.psi10), std::abs(state.psi00), std::abs(state.psi01)});
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& a = order[k];
            // delta psi as a quartic form in one variable: the coefficient of u^4
            const cplx series = t.delta_psi(a)(0, 0, 0, 0);
            const std::string w = at_tau(i, tau) + ", a=" + label(a);
            tr.record(std::abs(series - rhs[k]), largest({std::abs(series), 4 * psi_scale * psi_scale}), w);

            // The second-order system in genus one.
            cplx system = -2.0 * std::pow(t.psi(a)(0, 0), 2);
            double scale = std::abs(system);
            for (const auto& b : evens) {
                const cplx term = 2.0 * sign_of(pairing(a, b)) * std::pow(t.theta(b) / t.theta(a), 4) *
                                  std::pow(t.psi(b)(0, 0), 2);
                system += term;
                scale = std::max(scale, std::abs(term));
            }
            tr.record(std::abs(system - rhs[k]), std::max(scale, 4 * psi_scale * psi_scale),
                      w + " (against the second-order system)");
        }
    });
}

IdentityCheck halphen_rk4(const CheckConfig& cfg) {
    constexpr int kSteps = 2000;
    const cplx travel{0.0, 0.5};
    return sampled("halphen_rk4", cfg, [&](int i, ResidualTracker& tr) {
        const cplx start = scalar_point(cfg, i);
        const auto end = integrate(theta_seeded_state(start, cfg.eps), start + travel, kSteps);
        const auto exact = theta_seeded_state(start + travel, cfg.eps);
        const double scale = largest({std::abs(exact.psi10), std::abs(exact.psi00), std::abs(exact.psi01)});
        const std::string w = at_tau(i, start);
        tr.record(std::abs(end.psi10 - exact.psi10), scale, w + ", psi_10");
        tr.record(std::abs(end.psi00 - exact.psi00), scale, w + ", psi_00");
        tr.record(std::abs(end.psi01 - exact.psi01), scale, w + ", psi_01");
    });
}

IdentityCheck legendre_lambda(const CheckConfig& cfg) {
    std::vector<char> skipped(static_cast<std::size_t>(std::max(cfg.plan.count, 0)), 0);
    auto out = sampled("legendre_lambda", cfg, [&](int i, ResidualTracker& tr) {
        const cplx tau = scalar_point(cfg, i);
        const auto r = legendre_lambda_checks(tau, cfg.eps);
        const std::string w = at_tau(i, tau);
        tr.record(r.derivative_theta01, 1.0, w + ", derivative via theta_01^4");
        tr.record(r.derivative_theta00, 1.0, w + ", derivative via theta_00^4");
        tr.record(r.derivative_difference, 1.0, w + ", derivative via finite difference");
        if (r.hypergeometric) {
            tr.record(r.omega, 1.0, w + ", period omega");
            tr.record(r.eta, 1.0, w + ", period eta");
        } else {
            skipped[static_cast<std::size_t>(i)] = 1;
        }
    });
    std::vector<int> skipped_samples;
    for (std::size_t i = 0; i < skipped.size(); ++i)
        if (skipped[i]) skipped_samples.push_back(static_cast<int>(i));
    out.details["hypergeometric_skipped"] = skipped_samples;
    if (!skipped_samples.empty())
        out.notes.push_back(std::to_string(skipped_samples.size()) +
                            " samples have lambda outside the hypergeometric region; period checks skipped there");
    return out;
}

IdentityCheck fourier_crosscheck(const CheckConfig& cfg) {
    const int g = cfg.genus;
    const int order = max_qexp_order(g);
    std::vector<QExpansion> expansions;
    for (const auto& a : enumerate(g, ParityFilter::even)) expansions.push_back(thetanull_qexp(a, order));
    auto out = sampled("fourier_crosscheck", cfg, [&](int i, ResidualTracker& tr) {
        const auto tau = cfg.plan.tau(g, i);
        for (const auto& e : expansions) {
            const auto& a = e.characteristic();
            const auto c = crosscheck(e, tau, cfg.eps);
            const std::string w = "sample " + std::to_string(i) + ", a=" + label(a);
            if (!c.within_bound) tr.fail(w + ": residual exceeds the certified bound");
            tr.record(c.residual, std::abs(c.series), w);
            tr.note("max_bound", c.bound);
        }
    });
    out.notes.push_back("expansion order " + std::to_string(order));
    return out;
}

}  // namespace thetakit::checks
