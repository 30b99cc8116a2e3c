// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Command line front end. Deliberately a thin shell over the C interface in
// orphansim.h: every verb maps to one library call and every library status
// maps straight to the process exit code.

#include <orphansim.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

struct ScenarioCloser {
    void operator()(orphansim_scenario_t* s) const { orphansim_scenario_close(s); }
};
using ScenarioHandle = std::unique_ptr<orphansim_scenario_t, ScenarioCloser>;

int Fail(int status)
{
    std::fprintf(stderr, "error: %s\n", orphansim_last_error());
    return status;
}

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir;
    uint64_t seed{0};
    bool seed_set{false};
    unsigned jobs{1};
};

void AddCommonOptions(CLI::App& cmd, CommonOpts& opts, bool with_jobs)
{
    cmd.add_option("-s,--scenario", opts.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd.add_option("-o,--out", opts.out_dir, "Output directory (overrides the scenario's out_dir)");
    cmd.add_option("--seed", opts.seed, "Base seed (overrides the scenario's base_seed)")
        ->envname("ORPHANSIM_SEED");
    if (with_jobs) {
        cmd.add_option("-j,--jobs", opts.jobs, "Number of runs to execute concurrently")
            ->check(CLI::Range(1u, 256u));
    }
}

int OpenScenario(const CommonOpts& opts, const CLI::App& cmd, ScenarioHandle& out)
{
    orphansim_scenario_t* raw = nullptr;
    if (int rc = orphansim_scenario_open(opts.scenario_path.c_str(), &raw); rc != ORPHANSIM_OK) {
        return rc;
    }
    out.reset(raw);
    if (!opts.out_dir.empty()) {
        if (int rc = orphansim_scenario_set_out_dir(out.get(), opts.out_dir.c_str()); rc != ORPHANSIM_OK) {
            return rc;
        }
    }
    if (cmd.count("--seed") > 0) {
        if (int rc = orphansim_scenario_set_seed(out.get(), opts.seed); rc != ORPHANSIM_OK) {
            return rc;
        }
    }
    return ORPHANSIM_OK;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{std::string("orphansim ") + orphansim_version() +
                 " - orphan transaction relay simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", orphansim_version());

    CommonOpts run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "Execute a scenario's replicates");
    AddCommonOptions(*run_cmd, run_opts, /*with_jobs=*/true);

    CommonOpts sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep orphan pool sizes across replicates");
    AddCommonOptions(*sweep_cmd, sweep_opts, /*with_jobs=*/true);

    CommonOpts validate_opts;
    std::string workload_out;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Parse and check a scenario without simulating");
    AddCommonOptions(*validate_cmd, validate_opts, /*with_jobs=*/false);
    validate_cmd->add_option("--export-workload", workload_out,
                             "Also build the workload and write it to this JSONL file");

    std::vector<std::string> compare_reports;
    std::string compare_out{"compare.csv"};
    CLI::App* compare_cmd = app.add_subcommand("compare", "Merge report.json files into one CSV");
    compare_cmd->add_option("reports", compare_reports, "report.json files (at least two)")
        ->required()
        ->expected(-2)
        ->check(CLI::ExistingFile);
    compare_cmd->add_option("-o,--out", compare_out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        ScenarioHandle sc;
        if (int rc = OpenScenario(run_opts, *run_cmd, sc); rc != ORPHANSIM_OK) return Fail(rc);
        if (int rc = orphansim_run(sc.get(), run_opts.jobs); rc != ORPHANSIM_OK) return Fail(rc);
        return 0;
    }
    if (sweep_cmd->parsed()) {
        ScenarioHandle sc;
        if (int rc = OpenScenario(sweep_opts, *sweep_cmd, sc); rc != ORPHANSIM_OK) return Fail(rc);
        if (int rc = orphansim_sweep(sc.get(), sweep_opts.jobs); rc != ORPHANSIM_OK) return Fail(rc);
        return 0;
    }
    if (validate_cmd->parsed()) {
        ScenarioHandle sc;
        if (int rc = OpenScenario(validate_opts, *validate_cmd, sc); rc != ORPHANSIM_OK) {
            return Fail(rc);
        }
        if (!workload_out.empty()) {
            if (int rc = orphansim_workload_export(sc.get(), workload_out.c_str()); rc != ORPHANSIM_OK) {
                return Fail(rc);
            }
        }
        std::printf("ok: %s\n", validate_opts.scenario_path.c_str());
        return 0;
    }
    if (compare_cmd->parsed()) {
        std::vector<const char*> paths;
        paths.reserve(compare_reports.size());
        for (const std::string& p : compare_reports) paths.push_back(p.c_str());
        if (int rc = orphansim_compare(paths.data(), paths.size(), compare_out.c_str());
            rc != ORPHANSIM_OK) {
            return Fail(rc);
        }
        return 0;
    }
    return 0;
}
