#include "thetakit/identities.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "checks.h"

namespace thetakit {

nlohmann::json to_json(const IdentityCheck& c) {
    return {{"name", c.name},
            {"genus", c.genus},
            {"sample_count", c.sample_count},
            {"seed", c.seed},
            {"tolerance", c.tolerance},
            {"max_abs_residual", c.max_abs_residual},
            {"max_rel_residual", c.max_rel_residual},
            {"status", c.passed() ? "pass" : "fail"},
            {"witness", c.witness},
            {"notes", c.notes},
            {"details", c.details}};
}

// --- ResidualTracker -----------------------------------------------------

void ResidualTracker::record(double abs_residual, double scale, const std::string& witness) {
    const double rel = scale > 0 ? abs_residual / scale : abs_residual;
    if (!std::isfinite(abs_residual) || !std::isfinite(rel)) {
        fail("non-finite residual at " + witness);
        return;
    }
    max_abs_ = std::max(max_abs_, abs_residual);
    if (rel > max_rel_ || witness_.empty()) {
        if (rel > max_rel_) max_rel_ = rel;
        witness_ = witness;
    }
}

void ResidualTracker::fail(const std::string& reason) {
    if (failure_.empty()) failure_ = reason;
}

void ResidualTracker::sign(const std::string& key, int value) {
    const auto [it, inserted] = signs_.emplace(key, value);
    if (!inserted && it->second != value) fail("sign of " + key + " is not constant");
}

void ResidualTracker::note(const std::string& key, double value) {
    const auto [it, inserted] = noted_.emplace(key, value);
    if (!inserted) it->second = std::max(it->second, value);
}

void ResidualTracker::merge(const ResidualTracker& later) {
    max_abs_ = std::max(max_abs_, later.max_abs_);
    if (later.max_rel_ > max_rel_ || witness_.empty()) {
        max_rel_ = std::max(max_rel_, later.max_rel_);
        if (!later.witness_.empty()) witness_ = later.witness_;
    }
    if (!later.failure_.empty()) fail(later.failure_);
    for (const auto& [k, v] : later.signs_) sign(k, v);
    for (const auto& [k, v] : later.noted_) note(k, v);
}

// --- scheduling ----------------------------------------------------------

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    workers = std::clamp(workers, 1, count);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    auto body = [&](int i) {
        try {
            fn(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    };
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++) body(i);
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

int default_workers() {
    if (const char* env = std::getenv("THETAKIT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// --- registry ------------------------------------------------------------

bool IdentityFamily::supports(int genus) const {
    return std::find(genera.begin(), genera.end(), genus) != genera.end();
}

const std::vector<IdentityFamily>& identity_registry() {
    using namespace checks;
    static const std::vector<IdentityFamily> registry = {
        {"heat_equation", "delta_jl theta vs Hessian / (2 pi i)^2 and vs tau finite differences",
         {1, 2, 3}, 1e-9, heat_equation},
        {"riemann_quartic", "quartic Riemann relations for all (a, c), with the odd-a constant-term corollary",
         {1, 2, 3}, 1e-9, riemann_quartic},
        {"delta_psi_system", "second-order system for delta psi_a as quartic forms",
         {1, 2, 3}, 1e-9, delta_psi_system},
        {"odd_gradient_squares", "squared odd gradients via theta_0-normalized thetanulls and psi differences",
         {1, 2, 3}, 1e-9, odd_gradient_squares},
        {"odd_gradient_fourth_powers", "fourth powers of odd gradients via theta_b^4 psi_b,jj^2",
         {1, 2, 3}, 1e-9, odd_gradient_fourth_powers},
        {"eta_scalar_diagonal", "det(psi_b - psi_a) at scalar tau equals (psi_10 - psi_00)^g",
         {1, 2, 3}, 1e-9, eta_scalar_diagonal},
        {"delta_lambda_transformation", "delta lambda_0 transforms by (c tau + d) X (c tau + d)^T under Gamma(4,8)",
         {2, 1}, 1e-8, delta_lambda_transformation},
        {"transformation_weight2", "det(psi_b - psi_a) is modular of weight 2 under Gamma(4,8)",
         {2, 1}, 1e-8, transformation_weight2},
        {"legendre_weight2", "(1/pi i) d lambda / d tau is modular of weight 2", {1}, 1e-8, legendre_weight2},
        {"gopel_system_sum", "delta of psi summed over each Goepel system", {2}, 1e-9, gopel_system_sum},
        {"gopel_explicit", "explicit delta psi_a via Goepel sums, and agreement with delta_psi_system",
         {2}, 1e-9, gopel_explicit},
        {"thetanull_quadratic", "quadratic relations among squared thetanulls", {2}, 1e-9, thetanull_quadratic},
        {"thetanull_quartic", "quartic relations among thetanulls", {2}, 1e-9, thetanull_quartic},
        {"eta_quotients", "eta_ab for a, b in {00,01,02,03} as thetanull quotients", {2}, 1e-9, eta_quotients},
        {"eta_gopel_products", "eta_ab for all 45 pairs as Goepel products, sign per pair",
         {2}, 1e-9, eta_gopel_products},
        {"theta72_product", "theta_a^72 as products of eta, sign per characteristic", {2}, 1e-9, theta72_product},
        {"chi_relation", "chi_1^2 + chi_2^2 + chi_3^2 - 2(chi_1 chi_2 + chi_2 chi_3 + chi_3 chi_1) = 0",
         {2}, 1e-9, chi_relation},
        {"chi_theta03_leading", "theta_03^8 coefficient of the chi relation is -3/256",
         {2}, 1e-9, chi_theta03_leading},
        {"phi_relation", "quartic relation among phi_0..phi_3 for the tau_11 and tau_22 families",
         {2}, 1e-9, phi_relation},
        {"phi_scalar_leading", "psi_03,1^8 coefficient at scalar tau equals theta_10^32 / 16^4",
         {2}, 1e-8, phi_scalar_leading},
        {"halphen_theta4", "theta^4 as differences of psi, and Jacobi's quartic identity", {1}, 1e-9, halphen_theta4},
        {"halphen_system", "delta psi from the series vs the Halphen right-hand sides", {1}, 1e-9, halphen_system},
        {"halphen_rk4", "RK4 integration of the Halphen system vs series psi", {1}, 1e-8, halphen_rk4},
        {"legendre_lambda", "lambda derivative identities and hypergeometric periods", {1}, 1e-9, legendre_lambda},
        {"fourier_crosscheck", "exact q-expansions vs the theta series", {1, 2}, 1e-9, fourier_crosscheck},
    };
    return registry;
}

const IdentityFamily& find_identity(std::string_view name) {
    for (const auto& f : identity_registry())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown identity '" + std::string(name) + "'");
}

IdentityCheck run_identity(const IdentityFamily& family, CheckConfig cfg) {
    if (!family.supports(cfg.genus))
        throw std::invalid_argument(family.name + " does not support genus " + std::to_string(cfg.genus));
    if (cfg.plan.count < 1) throw std::invalid_argument("sample count must be positive");
    if (!(cfg.eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(cfg.tol > 0)) cfg.tol = family.default_tol;
    auto out = family.run(cfg);
    out.name = family.name;
    return out;
}

namespace checks {

// --- shared helpers ------------------------------------------------------

ThetanullTable::ThetanullTable(const SiegelPoint& tau, int max_moment, double eps) : genus_(tau.genus()) {
    for (const auto& a : enumerate(genus_)) {
        moments_.push_back(thetanull_moments(a, tau, a.is_even() ? max_moment : std::min(max_moment, 1), eps));
        psi_.push_back(a.is_even() && max_moment >= 2 ? psi_from_moments(moments_.back()) : SymmetricForm(genus_));
    }
}

const ThetaMoments& ThetanullTable::at(const Characteristic& a) const {
    if (a.genus() != genus_) throw std::invalid_argument("characteristic genus differs from table");
    return moments_[a.index()];
}

const SymmetricForm& ThetanullTable::psi(const Characteristic& a) const {
    if (!a.is_even()) throw std::invalid_argument("psi needs an even characteristic");
    at(a);
    return psi_[a.index()];
}

QuarticForm ThetanullTable::delta_psi(const Characteristic& a) const { return delta_psi_from_moments(at(a)); }

IdentityCheck sampled(const std::string& name, const CheckConfig& cfg,
                      const std::function<void(int, ResidualTracker&)>& fn) {
    const int n = cfg.plan.count;
    std::vector<ResidualTracker> trackers(static_cast<std::size_t>(n));
    parallel_for(n, cfg.workers, [&](int i) {
        auto& tr = trackers[static_cast<std::size_t>(i)];
        try {
            fn(i, tr);
        } catch (const std::exception& e) {
            tr.fail("sample " + std::to_string(i) + ": " + e.what());
        }
    });
    ResidualTracker total;
    for (const auto& tr : trackers) total.merge(tr);

    IdentityCheck out;
    out.name = name;
    out.genus = cfg.genus;
    out.sample_count = n;
    out.seed = cfg.plan.seed;
    out.tolerance = cfg.tol;
    out.max_abs_residual = total.max_abs();
    out.max_rel_residual = total.max_rel();
    out.witness = total.witness();
    if (total.failed()) {
        out.witness = total.failure();
        out.notes.push_back("hard failure: " + total.failure());
    }
    out.status = (!total.failed() && total.max_rel() <= cfg.tol) ? CheckStatus::pass : CheckStatus::fail;
    if (!total.signs().empty()) out.details["signs"] = total.signs();
    for (const auto& [k, v] : total.noted()) out.details[k] = v;
    return out;
}

double largest(std::initializer_list<double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, x);
    return m;
}

std::string label(const Characteristic& a) { return a.genus() == 2 ? digit_encode(a) : a.to_string(); }

cplx central_difference(const std::function<cplx(double)>& f, double h) {
    return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

}  // namespace checks

}  // namespace thetakit
