// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_SCENARIO_HPP
#define ORPHANSIM_SCENARIO_HPP

#include <orphansim/metrics.hpp>
#include <orphansim/netsim.hpp>
#include <orphansim/workload.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace orphansim {

inline constexpr uint32_t SCENARIO_SCHEMA_VERSION = 1;

struct SweepSpec {
    std::string parameter{"orphan_pool.max_size"};
    std::vector<double> values{20, 50, 100, 500, 1000};
};

struct OutputOptions {
    bool audit{true};
    bool distributions{false};
    bool workload{false};
};

/**
 * A fully described experiment: workload shape, network/sim parameters,
 * replicate count and output switches. Parsed strictly: unknown keys are
 * configuration errors that name the offending key and section.
 */
struct Scenario {
    std::string name;
    std::string out_dir{"out"};
    uint32_t replicates{3};
    uint64_t base_seed{1};

    WorkloadConfig workload;
    //! When false, each replicate derives its workload seed from the run
    //! seed; when true the scenario pinned one workload for all replicates.
    bool workload_seed_fixed{false};
    std::string workload_import_path; //!< non-empty: load instead of generating

    SimConfig sim;
    std::optional<SweepSpec> sweep;
    OutputOptions outputs;
};

Scenario ParseScenarioJson(const nlohmann::json& j);
Scenario LoadScenarioFile(const std::string& path);

//! The workload a replicate with the given run seed would simulate: the
//! imported file when one is pinned, otherwise a freshly built one whose
//! seed is derived from the run seed (or pinned by the scenario).
Workload BuildScenarioWorkload(const Scenario& scenario, uint64_t run_seed);

struct RunArtifacts {
    uint64_t seed{0};
    bool swept{false};
    double sweep_value{0.0};
    std::string run_dir;
    std::string report_path;
    RunReport report;
};

//! Replicated plain runs: <out>/<name>/seed_<seed>/{report.json, audit.jsonl,
//! meta.json} plus a merged report.csv across replicates.
std::vector<RunArtifacts> RunScenario(const Scenario& scenario, unsigned jobs);

//! Parameter sweep (scenario.sweep or the default pool-size ladder): one run
//! per (value, replicate) plus per-pool-size summary CSVs.
std::vector<RunArtifacts> RunSweep(const Scenario& scenario, unsigned jobs);

//! Cross-run comparison table, one row per (pool size, node), normalized
//! against the pool-100 mean unique count when present.
void CompareReports(const std::vector<std::string>& report_paths, const std::string& out_csv_path);

} // namespace orphansim

#endif // ORPHANSIM_SCENARIO_HPP
