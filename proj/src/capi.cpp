// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim.h>

#include <orphansim/error.hpp>
#include <orphansim/scenario.hpp>
#include <orphansim/version.hpp>
#include <orphansim/workload.hpp>

#include <json.hpp>

#include <exception>
#include <memory>
#include <string>
#include <vector>

struct orphansim_scenario {
    orphansim::Scenario scenario;
};

namespace {

thread_local std::string g_last_error;

void SetError(const std::string& message)
{
    g_last_error = message;
}

//! Run `fn`, translating exceptions into status codes and the thread-local
//! error message. Success clears the message.
template <typename Fn>
int Guard(Fn&& fn)
{
    try {
        fn();
        g_last_error.clear();
        return ORPHANSIM_OK;
    } catch (const orphansim::SchemaError& e) {
        SetError(e.what());
        return ORPHANSIM_ERR_SCHEMA;
    } catch (const orphansim::ConfigError& e) {
        SetError(e.what());
        return ORPHANSIM_ERR_CONFIG;
    } catch (const orphansim::SimError& e) {
        SetError(e.what());
        return ORPHANSIM_ERR_RUNTIME;
    } catch (const std::exception& e) {
        SetError(e.what());
        return ORPHANSIM_ERR_RUNTIME;
    } catch (...) {
        SetError("unknown failure");
        return ORPHANSIM_ERR_RUNTIME;
    }
}

int RequireArg(bool present, const char* what)
{
    if (present) return ORPHANSIM_OK;
    SetError(std::string(what) + " must not be NULL");
    return ORPHANSIM_ERR_CONFIG;
}

} // namespace

extern "C" {

const char* orphansim_version(void)
{
    return orphansim::TOOL_VERSION;
}

const char* orphansim_last_error(void)
{
    return g_last_error.c_str();
}

int orphansim_scenario_open(const char* path, orphansim_scenario_t** out)
{
    if (int rc = RequireArg(path != nullptr, "path"); rc != ORPHANSIM_OK) return rc;
    if (int rc = RequireArg(out != nullptr, "out"); rc != ORPHANSIM_OK) return rc;
    *out = nullptr;
    return Guard([&] {
        auto handle = std::make_unique<orphansim_scenario>();
        handle->scenario = orphansim::LoadScenarioFile(path);
        *out = handle.release();
    });
}

int orphansim_scenario_parse(const char* json_text, orphansim_scenario_t** out)
{
    if (int rc = RequireArg(json_text != nullptr, "json_text"); rc != ORPHANSIM_OK) return rc;
    if (int rc = RequireArg(out != nullptr, "out"); rc != ORPHANSIM_OK) return rc;
    *out = nullptr;
    return Guard([&] {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::exception& e) {
            throw orphansim::ConfigError(std::string("cannot parse scenario JSON: ") + e.what());
        }
        auto handle = std::make_unique<orphansim_scenario>();
        handle->scenario = orphansim::ParseScenarioJson(j);
        *out = handle.release();
    });
}

int orphansim_scenario_set_seed(orphansim_scenario_t* scenario, uint64_t seed)
{
    if (int rc = RequireArg(scenario != nullptr, "scenario"); rc != ORPHANSIM_OK) return rc;
    scenario->scenario.base_seed = seed;
    g_last_error.clear();
    return ORPHANSIM_OK;
}

int orphansim_scenario_set_out_dir(orphansim_scenario_t* scenario, const char* dir)
{
    if (int rc = RequireArg(scenario != nullptr, "scenario"); rc != ORPHANSIM_OK) return rc;
    if (int rc = RequireArg(dir != nullptr, "dir"); rc != ORPHANSIM_OK) return rc;
    return Guard([&] {
        if (*dir == '\0') throw orphansim::ConfigError("output directory must not be empty");
        scenario->scenario.out_dir = dir;
    });
}

void orphansim_scenario_close(orphansim_scenario_t* scenario)
{
    delete scenario;
}

int orphansim_run(orphansim_scenario_t* scenario, unsigned jobs)
{
    if (int rc = RequireArg(scenario != nullptr, "scenario"); rc != ORPHANSIM_OK) return rc;
    return Guard([&] { orphansim::RunScenario(scenario->scenario, jobs == 0 ? 1 : jobs); });
}

int orphansim_sweep(orphansim_scenario_t* scenario, unsigned jobs)
{
    if (int rc = RequireArg(scenario != nullptr, "scenario"); rc != ORPHANSIM_OK) return rc;
    return Guard([&] { orphansim::RunSweep(scenario->scenario, jobs == 0 ? 1 : jobs); });
}

int orphansim_workload_export(orphansim_scenario_t* scenario, const char* out_path)
{
    if (int rc = RequireArg(scenario != nullptr, "scenario"); rc != ORPHANSIM_OK) return rc;
    if (int rc = RequireArg(out_path != nullptr, "out_path"); rc != ORPHANSIM_OK) return rc;
    return Guard([&] {
        const orphansim::Workload workload =
            orphansim::BuildScenarioWorkload(scenario->scenario, scenario->scenario.base_seed);
        orphansim::WriteWorkloadJsonlFile(workload, out_path);
    });
}

int orphansim_compare(const char* const* report_paths, size_t count, const char* out_csv_path)
{
    if (int rc = RequireArg(report_paths != nullptr, "report_paths"); rc != ORPHANSIM_OK) return rc;
    if (int rc = RequireArg(out_csv_path != nullptr, "out_csv_path"); rc != ORPHANSIM_OK) return rc;
    return Guard([&] {
        std::vector<std::string> paths;
        paths.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (report_paths[i] == nullptr) {
                throw orphansim::ConfigError("report path " + std::to_string(i) + " is NULL");
            }
            paths.emplace_back(report_paths[i]);
        }
        orphansim::CompareReports(paths, out_csv_path);
    });
}

} // extern "C"
