#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xdiff/config.hpp"
#include "xdiff/entropy.hpp"
#include "xdiff/gronwall.hpp"

namespace xdiff {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// Outcome of one experiment: per-check pass/fail, kind-specific tables in
/// `detail`, the primary diagnostics series, and per-level auxiliary series.
struct ExperimentReport {
    std::string kind;
    bool pass = true;
    std::vector<CheckResult> checks;
    nlohmann::json detail = nlohmann::json::object();
    std::vector<EntropyRecord> series;
    std::vector<std::pair<std::string, std::vector<EntropyRecord>>> aux_series;
};

/// Coarse runs against a fine strong-solution surrogate from the same
/// (conservatively interpolated) initial data; H per level and over time.
ExperimentReport weak_strong_experiment(const ExperimentConfig& cfg);

/// Perturbed-initial-data pair on one grid; fits the integral inequality
/// constant to the recorded H series.
ExperimentReport gronwall_experiment(const ExperimentConfig& cfg);

/// g == 0 runs against the closed-form porous-medium solution; L1 errors,
/// observed order, mass drift.
ExperimentReport pme_validation(const ExperimentConfig& cfg);

/// Manufactured-solution refinement studies: spatial order at dt ~ h^2,
/// temporal order by Richardson differences at fixed fine h.
ExperimentReport convergence_experiment(const ExperimentConfig& cfg);

/// Seeded property batteries over random states and short solver runs.
ExperimentReport invariants_suite(const ExperimentConfig& cfg);

/// Dispatch on cfg.kind.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Full structured report: checks, detail, resolved config echo, and a
/// deterministic content hash under "report_hash".
nlohmann::json report_to_json(const ExperimentReport& report, const ExperimentConfig& cfg);

} // namespace xdiff
