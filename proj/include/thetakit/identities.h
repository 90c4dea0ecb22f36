#pragma once

// Numeric verification of theta identities at seeded sample points.
//
// Every check reports scale-normalized residuals: the absolute residual of
// an identity divided by the largest magnitude among its terms. A check
// passes iff the largest relative residual over all points and
// characteristics is within tolerance and no hard failure was recorded.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thetakit/sampling.h"
#include "thetakit/theta.h"

namespace thetakit {

enum class CheckStatus { pass, fail };

struct IdentityCheck {
    std::string name;
    int genus = 0;
    int sample_count = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    CheckStatus status = CheckStatus::fail;
    /// Where the largest (or first failing) residual occurred.
    std::string witness;
    std::vector<std::string> notes;
    /// Family-specific extras, e.g. empirically resolved signs.
    nlohmann::json details = nlohmann::json::object();

    bool passed() const { return status == CheckStatus::pass; }
};

nlohmann::json to_json(const IdentityCheck& c);

/// Max-reduction of residuals for one sample; trackers are merged in sample
/// order so that ties and sign tables resolve deterministically.
class ResidualTracker {
public:
    /// scale <= 0 is treated as "no scale": the relative residual is then the
    /// absolute one.
    void record(double abs_residual, double scale, const std::string& witness);
    /// Marks the check as failed regardless of residual sizes.
    void fail(const std::string& reason);
    /// Records an empirically observed sign; merging traces with a different
    /// sign for the same key is a failure.
    void sign(const std::string& key, int value);
    void note(const std::string& key, double value);

    void merge(const ResidualTracker& later);

    double max_abs() const { return max_abs_; }
    double max_rel() const { return max_rel_; }
    const std::string& witness() const { return witness_; }
    bool failed() const { return !failure_.empty(); }
    const std::string& failure() const { return failure_; }
    const std::map<std::string, int>& signs() const { return signs_; }
    /// Per-key maxima of the noted values.
    const std::map<std::string, double>& noted() const { return noted_; }

private:
    double max_abs_ = 0.0;
    double max_rel_ = 0.0;
    std::string witness_;
    std::string failure_;
    std::map<std::string, int> signs_;
    std::map<std::string, double> noted_;
};

struct CheckConfig {
    int genus = 2;
    SamplePlan plan;
    double eps = kDefaultEps;
    /// <= 0 selects the family default.
    double tol = 0.0;
    int workers = 1;
    /// Number of Gamma(4,8) words per sample point in the transformation checks.
    int gamma_count = 10;
};

struct IdentityFamily {
    std::string name;
    std::string summary;
    std::vector<int> genera;
    double default_tol;
    std::function<IdentityCheck(const CheckConfig&)> run;

    bool supports(int genus) const;
};

/// The static table of every registered identity, in a fixed order.
const std::vector<IdentityFamily>& identity_registry();

/// Throws std::invalid_argument for an unknown name.
const IdentityFamily& find_identity(std::string_view name);

/// Runs one family; throws std::invalid_argument for an unsupported genus.
IdentityCheck run_identity(const IdentityFamily& family, CheckConfig cfg);

/// Runs fn(0..count-1) on up to `workers` threads. The first exception (by
/// index) is rethrown after all workers finish.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

/// Default worker count: THETAKIT_WORKERS if set and positive, else the
/// hardware concurrency (at least 1).
int default_workers();

}  // namespace thetakit
