#include "doctest.h"

#include <atomic>
#include <set>
#include <stdexcept>

#include "thetakit/campaign.h"
#include "thetakit/identities.h"

using namespace thetakit;

namespace {

const std::vector<std::string> kExpectedFamilies = {
    "heat_equation",       "riemann_quartic",     "delta_psi_system",
    "odd_gradient_squares", "odd_gradient_fourth_powers", "eta_scalar_diagonal",
    "delta_lambda_transformation", "transformation_weight2", "legendre_weight2",
    "gopel_system_sum",    "gopel_explicit",      "thetanull_quadratic",
    "thetanull_quartic",   "eta_quotients",       "eta_gopel_products",
    "theta72_product",     "chi_relation",        "chi_theta03_leading",
    "phi_relation",        "phi_scalar_leading",  "halphen_theta4",
    "halphen_system",      "halphen_rk4",         "legendre_lambda",
    "fourier_crosscheck",
};

CheckConfig small(int genus, int count, std::uint64_t seed = 7) {
    CheckConfig cfg;
    cfg.genus = genus;
    cfg.plan.count = count;
    cfg.plan.seed = seed;
    cfg.gamma_count = 2;
    return cfg;
}

nlohmann::json without_timing(nlohmann::json j) {
    j.erase("timing");
    return j;
}

}  // namespace

TEST_CASE("registry is complete") {
    const auto& reg = identity_registry();
    REQUIRE_FALSE(reg.empty());
    std::vector<std::string> names;
    for (const auto& f : reg) {
        names.push_back(f.name);
        CHECK_FALSE(f.genera.empty());
        CHECK(f.default_tol > 0);
        CHECK(f.run);
        CHECK(&find_identity(f.name) == &f);
    }
    CHECK(names == kExpectedFamilies);
    CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
    CHECK_THROWS_AS(find_identity("no_such_identity"), std::invalid_argument);
}

TEST_CASE("every family passes on a small plan at each supported genus") {
    for (const auto& f : identity_registry())
        for (int g : f.genera) {
            if (g == 3 && f.name == "heat_equation") continue;  // covered in the theta tests
            const auto r = run_identity(f, small(g, 2, 19));
            INFO(f.name << " g=" << g << " " << r.witness);
            CHECK(r.passed());
            CHECK(r.genus == g);
            CHECK(r.sample_count == 2);
            CHECK(r.max_rel_residual <= r.tolerance);
            CHECK(r.tolerance == f.default_tol);
        }
}

TEST_CASE("a tolerance below rounding level fails and records a witness") {
    auto cfg = small(2, 1);
    cfg.tol = 1e-300;
    const auto r = run_identity(find_identity("thetanull_quadratic"), cfg);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(r.witness.empty());
    CHECK(r.tolerance == 1e-300);
}

TEST_CASE("unsupported genus is rejected") {
    CHECK_THROWS_AS(run_identity(find_identity("gopel_system_sum"), small(3, 1)), std::invalid_argument);
    CHECK_THROWS_AS(run_identity(find_identity("halphen_rk4"), small(2, 1)), std::invalid_argument);
}

TEST_CASE("checks are deterministic and independent of the worker count") {
    for (const char* name : {"delta_psi_system", "eta_gopel_products", "theta72_product"}) {
        auto cfg = small(2, 4, 31);
        const auto once = to_json(run_identity(find_identity(name), cfg));
        const auto twice = to_json(run_identity(find_identity(name), cfg));
        cfg.workers = 3;
        const auto threaded = to_json(run_identity(find_identity(name), cfg));
        CHECK(once.dump() == twice.dump());
        CHECK(once.dump() == threaded.dump());
    }
}

TEST_CASE("resolved signs are reported per key") {
    const auto r = run_identity(find_identity("eta_gopel_products"), small(2, 3));
    REQUIRE(r.details.contains("signs"));
    CHECK(r.details["signs"].size() == 45);
    for (const auto& [key, value] : r.details["signs"].items()) CHECK((value == 1 || value == -1));
}

TEST_CASE("residual tracker") {
    ResidualTracker first;
    first.record(1e-12, 1.0, "p");
    first.record(4e-12, 2.0, "q");
    first.record(3e-13, 0.0, "r");
    CHECK(first.max_abs() == 4e-12);
    CHECK(first.max_rel() == 2e-12);
    CHECK(first.witness() == "q");

    ResidualTracker later;
    later.record(1e-10, 1.0, "s");
    later.sign("x", -1);
    first.sign("x", -1);
    first.merge(later);
    CHECK(first.max_rel() == 1e-10);
    CHECK(first.witness() == "s");
    CHECK_FALSE(first.failed());
    CHECK(first.signs().at("x") == -1);

    ResidualTracker conflict;
    conflict.sign("x", 1);
    first.merge(conflict);
    CHECK(first.failed());

    ResidualTracker notes;
    notes.note("k", 2.0);
    notes.note("k", 1.0);
    CHECK(notes.noted().at("k") == 2.0);
    notes.fail("boom");
    CHECK(notes.failure() == "boom");
}

TEST_CASE("parallel_for covers every index and rethrows the first failure") {
    std::atomic<int> sum{0};
    parallel_for(100, 4, [&](int i) { sum += i; });
    CHECK(sum == 4950);
    CHECK_THROWS_WITH(parallel_for(10, 3,
                                   [](int i) {
                                       if (i == 4) throw std::runtime_error("four");
                                       if (i == 7) throw std::runtime_error("seven");
                                   }),
                      "four");
    CHECK(default_workers() >= 1);
}

TEST_CASE("run configuration validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.samples = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.genus = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.eps = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.identities = {"bogus"};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.identities = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("job selection") {
    RunConfig cfg;
    std::size_t expected = 0;
    for (const auto& f : identity_registry()) expected += f.genera.size();
    CHECK(select_jobs(cfg).size() == expected);

    cfg.genus = 2;
    const auto g2 = select_jobs(cfg);
    CHECK(g2.size() >= 12);
    for (const auto& job : g2) {
        CHECK(job.genus == 2);
        CHECK(job.family->supports(2));
    }

    cfg.identities = {"halphen_rk4"};
    CHECK_THROWS_AS(select_jobs(cfg), std::invalid_argument);
    cfg.genus = 1;
    CHECK(select_jobs(cfg).size() == 1);
}

TEST_CASE("campaign reports are byte-identical apart from timing") {
    RunConfig cfg;
    cfg.genus = 2;
    cfg.samples = 2;
    cfg.identities = {"thetanull_quartic", "eta_quotients", "chi_relation"};
    cfg.include_formal = true;
    const auto first = to_json(run_campaign(cfg));
    const auto second = to_json(run_campaign(cfg));
    CHECK(without_timing(first).dump() == without_timing(second).dump());
    CHECK(first.at("status") == "pass");
    CHECK(first.at("checks").size() == 3);
    CHECK(first.at("formal").size() == 3);
    CHECK(first.at("tool_version") == kToolVersion);
    CHECK(first.at("timing").at("checks").size() == 3);

    const auto table = render_table(first);
    CHECK(table.find("PASS  thetanull_quartic") != std::string::npos);
    CHECK(table.find("overall: pass") != std::string::npos);
    CHECK(render_table(first.at("checks")).find("eta_quotients") != std::string::npos);
}

TEST_CASE("overall status is pass iff every check passes") {
    CampaignReport report;
    CHECK(report.passed());
    IdentityCheck ok;
    ok.status = CheckStatus::pass;
    report.checks.push_back(ok);
    CHECK(report.passed());
    report.checks.push_back(IdentityCheck{});
    CHECK_FALSE(report.passed());
    report.checks.pop_back();
    report.formal.push_back(FormalCheck{});
    CHECK_FALSE(report.passed());
}
