#include "thetakit/campaign.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace thetakit {

void RunConfig::validate() const {
    if (genus && (*genus < 1 || *genus > kMaxGenus)) throw std::invalid_argument("genus must be 1, 2 or 3");
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (tol && !(*tol > 0)) throw std::invalid_argument("tol must be positive");
    if (workers < 1) throw std::invalid_argument("workers must be positive");
    if (identities.empty()) throw std::invalid_argument("no identity selected");
    for (const auto& name : identities)
        if (name != "all") find_identity(name);
}

std::vector<CampaignJob> select_jobs(const RunConfig& cfg) {
    cfg.validate();
    const bool all = std::find(cfg.identities.begin(), cfg.identities.end(), "all") != cfg.identities.end();
    std::vector<CampaignJob> jobs;
    for (const auto& family : identity_registry()) {
        const bool named = std::find(cfg.identities.begin(), cfg.identities.end(), family.name) != cfg.identities.end();
        if (!all && !named) continue;
        if (cfg.genus) {
            if (family.supports(*cfg.genus))
                jobs.push_back({&family, *cfg.genus});
            else if (named)
                throw std::invalid_argument(family.name + " does not support genus " + std::to_string(*cfg.genus));
        } else {
            for (int g : family.genera) jobs.push_back({&family, g});
        }
    }
    return jobs;
}

bool CampaignReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed()) return false;
    for (const auto& f : formal)
        if (!f.holds) return false;
    return true;
}

namespace {

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <class F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

CampaignReport run_campaign(const RunConfig& cfg) {
    const auto jobs = select_jobs(cfg);
    CampaignReport report;
    report.config = cfg;
    report.started_at = utc_now();
    for (const auto& job : jobs) {
        CheckConfig cc;
        cc.genus = job.genus;
        cc.plan.seed = cfg.seed;
        cc.plan.count = cfg.samples;
        cc.eps = cfg.eps;
        cc.tol = cfg.tol.value_or(0.0);
        cc.workers = cfg.workers;
        report.check_seconds.push_back(timed([&] { report.checks.push_back(run_identity(*job.family, cc)); }));
    }
    if (cfg.include_formal) {
        report.formal_seconds.push_back(timed([&] { report.formal.push_back(verify_chi_identity()); }));
        report.formal_seconds.push_back(timed([&] { report.formal.push_back(verify_phi_identity()); }));
        report.formal_seconds.push_back(timed([&] { report.formal.push_back(verify_gopel_sum_lemma()); }));
    }
    return report;
}

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["genus"] = cfg.genus ? nlohmann::json(*cfg.genus) : nlohmann::json("all supported");
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["eps"] = cfg.eps;
    j["tol"] = cfg.tol ? nlohmann::json(*cfg.tol) : nlohmann::json("family default");
    j["identities"] = cfg.identities;
    j["formal"] = cfg.include_formal;
    j["workers"] = cfg.workers;
    return j;
}

nlohmann::json to_json(const FormalCheck& c) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [label, n] : c.term_counts) counts.push_back({{"expression", label}, {"terms", n}});
    return {{"name", c.name},
            {"status", c.holds ? "pass" : "fail"},
            {"residual_terms", c.residual_terms},
            {"term_counts", counts},
            {"high_water", c.high_water},
            {"notes", c.notes}};
}

nlohmann::json to_json(const CampaignReport& r) {
    nlohmann::json j;
    j["tool_version"] = r.tool_version;
    j["config"] = to_json(r.config);
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
    j["formal"] = nlohmann::json::array();
    for (const auto& f : r.formal) j["formal"].push_back(to_json(f));
    j["status"] = r.passed() ? "pass" : "fail";

    nlohmann::json timing;
    timing["started_at"] = r.started_at;
    timing["checks"] = nlohmann::json::array();
    double total = 0;
    for (std::size_t k = 0; k < r.checks.size() && k < r.check_seconds.size(); ++k) {
        timing["checks"].push_back(
            {{"name", r.checks[k].name}, {"genus", r.checks[k].genus}, {"seconds", r.check_seconds[k]}});
        total += r.check_seconds[k];
    }
    timing["formal"] = nlohmann::json::array();
    for (std::size_t k = 0; k < r.formal.size() && k < r.formal_seconds.size(); ++k) {
        timing["formal"].push_back({{"name", r.formal[k].name}, {"seconds", r.formal_seconds[k]}});
        total += r.formal_seconds[k];
    }
    timing["total_seconds"] = total;
    j["timing"] = timing;
    return j;
}

std::string render_table(const nlohmann::json& report) {
    const nlohmann::json& checks = report.is_array() ? report : report.at("checks");
    std::ostringstream os;
    char line[256];
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-4s  %-28s g=%d  max_rel=%.3e  tol=%.1e  samples=%d",
                      c.at("status").get<std::string>() == "pass" ? "PASS" : "FAIL",
                      c.at("name").get<std::string>().c_str(), c.at("genus").get<int>(),
                      c.at("max_rel_residual").get<double>(), c.at("tolerance").get<double>(),
                      c.at("sample_count").get<int>());
        os << line;
        if (c.at("status").get<std::string>() != "pass") os << "  at " << c.at("witness").get<std::string>();
        os << '\n';
    }
    if (report.is_object() && report.contains("formal"))
        for (const auto& f : report.at("formal")) {
            std::snprintf(line, sizeof line, "%-4s  formal %-17s residual_terms=%zu  high_water=%zu",
                          f.at("status").get<std::string>() == "pass" ? "PASS" : "FAIL",
                          f.at("name").get<std::string>().c_str(), f.at("residual_terms").get<std::size_t>(),
                          f.at("high_water").get<std::size_t>());
            os << line << '\n';
        }
    if (report.is_object() && report.contains("status"))
        os << "overall: " << report.at("status").get<std::string>() << '\n';
    return os.str();
}

}  // namespace thetakit
