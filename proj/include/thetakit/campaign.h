#pragma once

// Verification campaigns: a selection of identity families run over one
// sample plan, collected into a JSON report.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "thetakit/exactpoly.h"
#include "thetakit/identities.h"

namespace thetakit {

inline constexpr const char* kToolVersion = "thetakit 1.0.0";

struct RunConfig {
    /// Unset: every family runs at each genus it supports.
    std::optional<int> genus;
    std::uint64_t seed = 7;
    int samples = 20;
    double eps = kDefaultEps;
    /// Unset: each family's default tolerance.
    std::optional<double> tol;
    /// Family names, or {"all"}.
    std::vector<std::string> identities = {"all"};
    bool include_formal = false;
    int workers = 1;

    /// Throws std::invalid_argument on non-positive numbers, genus outside
    /// 1..3, or unknown identity names.
    void validate() const;
};

struct CampaignJob {
    const IdentityFamily* family;
    int genus;
};

/// Jobs in registry order. With an explicit genus, "all" keeps the families
/// supporting it and a named family that does not support it is an error.
std::vector<CampaignJob> select_jobs(const RunConfig& cfg);

struct CampaignReport {
    std::string tool_version = kToolVersion;
    RunConfig config;
    std::vector<IdentityCheck> checks;
    std::vector<FormalCheck> formal;
    /// Wall time per check, parallel to `checks`, then per formal check.
    std::vector<double> check_seconds;
    std::vector<double> formal_seconds;
    std::string started_at;

    bool passed() const;
};

CampaignReport run_campaign(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const FormalCheck& c);
/// Everything except wall times and the start timestamp, which sit in the
/// separate "timing" block.
nlohmann::json to_json(const CampaignReport& r);

/// One line per check: status, name, genus, max relative residual, tolerance.
/// Accepts a full report or a bare array of check records.
std::string render_table(const nlohmann::json& report);

}  // namespace thetakit
