// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/scenario.hpp>

#include <orphansim/error.hpp>
#include <orphansim/random.hpp>
#include <orphansim/report_io.hpp>
#include <orphansim/time_units.hpp>
#include <orphansim/version.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <thread>

namespace orphansim {

namespace {

// ---------------------------------------------------------------------------
// Strict JSON helpers: every key is either consumed or an error.

class StrictSection
{
public:
    StrictSection(const nlohmann::json& j, std::string path) : m_json(j), m_path(std::move(path))
    {
        if (!m_json.is_object()) throw ConfigError("'" + m_path + "' must be a JSON object");
    }

    bool Has(const char* key) const { return m_json.contains(key); }

    const nlohmann::json& Get(const char* key)
    {
        m_consumed.insert(key);
        const auto it = m_json.find(key);
        if (it == m_json.end()) throw ConfigError("missing key '" + std::string(key) + "' in '" + m_path + "'");
        return *it;
    }

    template <typename T>
    T Require(const char* key)
    {
        return As<T>(Get(key), key);
    }

    template <typename T>
    T Optional(const char* key, T fallback)
    {
        if (!Has(key)) return fallback;
        return As<T>(Get(key), key);
    }

    const nlohmann::json* OptionalSection(const char* key)
    {
        if (!Has(key)) return nullptr;
        return &Get(key);
    }

    std::string Path(const char* key) const { return m_path + "." + key; }

    //! Call last: any key never consumed is a configuration error.
    void Done() const
    {
        for (const auto& item : m_json.items()) {
            if (!m_consumed.count(item.key())) {
                throw ConfigError("unknown key '" + item.key() + "' in '" + m_path + "'");
            }
        }
    }

private:
    template <typename T>
    T As(const nlohmann::json& value, const char* key) const
    {
        try {
            return value.get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError("invalid value type for '" + Path(key) + "'");
        }
    }

    const nlohmann::json& m_json;
    std::string m_path;
    std::set<std::string> m_consumed;
};

DistSpec ParseDistSpec(const nlohmann::json& j, const std::string& path)
{
    StrictSection s(j, path);
    const std::string kind = s.Require<std::string>("dist");
    DistSpec spec;
    if (kind == "constant") {
        spec = DistSpec::Constant(s.Require<double>("value"));
    } else if (kind == "uniform") {
        spec = DistSpec::Uniform(s.Require<double>("lo"), s.Require<double>("hi"));
    } else if (kind == "lognormal") {
        spec = DistSpec::LogNormalMeanStd(s.Require<double>("mean"), s.Require<double>("stddev"));
    } else if (kind == "exponential") {
        spec = DistSpec::Exponential(s.Require<double>("mean"));
    } else {
        throw ConfigError("unknown distribution kind '" + kind + "' in '" + path + "'");
    }
    s.Done();
    return spec;
}

int64_t ParseSeconds(StrictSection& s, const char* key, int64_t fallback_us)
{
    if (!s.Has(key)) return fallback_us;
    const double seconds = s.Require<double>(key);
    if (!std::isfinite(seconds)) throw ConfigError("'" + s.Path(key) + "' must be finite");
    return SecondsToMicros(seconds);
}

void ParseWorkloadSection(const nlohmann::json& j, Scenario& scenario)
{
    StrictSection s(j, "workload");
    WorkloadConfig& cfg = scenario.workload;

    cfg.tx_count = s.Optional<uint64_t>("tx_count", cfg.tx_count);
    if (const nlohmann::json* pc = s.OptionalSection("parent_count")) {
        StrictSection ps(*pc, "workload.parent_count");
        cfg.parent_count.mean = ps.Optional<double>("mean", cfg.parent_count.mean);
        cfg.parent_count.one_fraction = ps.Optional<double>("one_fraction", cfg.parent_count.one_fraction);
        ps.Done();
    }
    if (const nlohmann::json* d = s.OptionalSection("fee_rate")) {
        cfg.fee_rate_dist = ParseDistSpec(*d, "workload.fee_rate");
    }
    if (const nlohmann::json* d = s.OptionalSection("size")) {
        cfg.size_dist = ParseDistSpec(*d, "workload.size");
    }
    cfg.size_min_bytes = s.Optional<uint32_t>("size_min_bytes", cfg.size_min_bytes);
    cfg.size_max_bytes = s.Optional<uint32_t>("size_max_bytes", cfg.size_max_bytes);
    cfg.nonstandard_fraction = s.Optional<double>("nonstandard_fraction", cfg.nonstandard_fraction);
    cfg.feerate_size_correlation = s.Optional<double>("feerate_size_correlation", cfg.feerate_size_correlation);
    cfg.parent_window = s.Optional<uint32_t>("parent_window", cfg.parent_window);
    cfg.preconfirmed_count = s.Optional<uint32_t>("preconfirmed_count", cfg.preconfirmed_count);
    cfg.inject_rate_tps = s.Optional<double>("inject_rate_tps", cfg.inject_rate_tps);
    if (s.Has("seed")) {
        cfg.seed = s.Require<uint64_t>("seed");
        scenario.workload_seed_fixed = true;
    }
    scenario.workload_import_path = s.Optional<std::string>("import_path", "");
    s.Done();
}

void ParsePoolSection(const nlohmann::json& j, OrphanPool::Options& pool)
{
    StrictSection s(j, "sim.orphan_pool");
    pool.max_size = s.Optional<uint64_t>("max_size", pool.max_size);
    pool.expiry_us = ParseSeconds(s, "expiry_s", pool.expiry_us);
    pool.sweep_interval_us = ParseSeconds(s, "sweep_interval_s", pool.sweep_interval_us);
    pool.max_orphan_size_bytes = s.Optional<uint32_t>("max_orphan_size_bytes", pool.max_orphan_size_bytes);
    s.Done();
}

void ParseSimSection(const nlohmann::json& j, SimConfig& cfg)
{
    StrictSection s(j, "sim");
    cfg.node_count = s.Optional<uint32_t>("node_count", cfg.node_count);
    cfg.mean_degree = s.Optional<double>("mean_degree", cfg.mean_degree);
    if (const nlohmann::json* d = s.OptionalSection("latency")) {
        cfg.latency_dist = ParseDistSpec(*d, "sim.latency");
    }
    if (const nlohmann::json* d = s.OptionalSection("block_latency")) {
        cfg.block_latency_dist = ParseDistSpec(*d, "sim.block_latency");
    }
    cfg.block_interval_us = ParseSeconds(s, "block_interval_s", cfg.block_interval_us);
    cfg.max_block_txs = s.Optional<uint32_t>("max_block_txs", cfg.max_block_txs);
    if (const nlohmann::json* d = s.OptionalSection("min_fee_rate")) {
        cfg.min_fee_rate_dist = ParseDistSpec(*d, "sim.min_fee_rate");
    }
    if (const nlohmann::json* p = s.OptionalSection("orphan_pool")) {
        ParsePoolSection(*p, cfg.pool);
    }
    if (s.Has("pool_sizes_per_node")) {
        cfg.pool_sizes_per_node = s.Require<std::vector<uint32_t>>("pool_sizes_per_node");
    }
    cfg.punishment_us = ParseSeconds(s, "punishment_s", cfg.punishment_us);
    cfg.run_duration_us = ParseSeconds(s, "run_duration_s", cfg.run_duration_us);
    cfg.memory_sample_interval_us = ParseSeconds(s, "memory_sample_interval_s", cfg.memory_sample_interval_us);
    if (s.Has("churn")) {
        const nlohmann::json& churn = s.Get("churn");
        if (!churn.is_array()) throw ConfigError("'sim.churn' must be an array");
        size_t idx = 0;
        for (const auto& ev_json : churn) {
            StrictSection es(ev_json, "sim.churn[" + std::to_string(idx) + "]");
            ChurnEvent ev;
            ev.at_us = SecondsToMicros(es.Require<double>("at_s"));
            ev.node = es.Require<uint16_t>("node");
            ev.peer = es.Require<uint16_t>("peer");
            const std::string action = es.Require<std::string>("action");
            if (action == "disconnect") {
                ev.disconnect = true;
            } else if (action == "reconnect") {
                ev.disconnect = false;
            } else {
                throw ConfigError("churn action must be 'disconnect' or 'reconnect'");
            }
            es.Done();
            cfg.churn.push_back(ev);
            ++idx;
        }
    }
    s.Done();
}

} // namespace

Scenario ParseScenarioJson(const nlohmann::json& j)
{
    StrictSection s(j, "scenario");

    const uint32_t version = s.Optional<uint32_t>("schema_version", SCENARIO_SCHEMA_VERSION);
    if (version != SCENARIO_SCHEMA_VERSION) {
        throw SchemaError("unsupported scenario schema_version " + std::to_string(version) +
                          " (expected " + std::to_string(SCENARIO_SCHEMA_VERSION) + ")");
    }

    Scenario scenario;
    scenario.name = s.Require<std::string>("name");
    if (scenario.name.empty()) throw ConfigError("scenario name must not be empty");
    for (const char c : scenario.name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '_' || c == '-';
        if (!ok) throw ConfigError("scenario name may only contain [A-Za-z0-9_-]");
    }
    scenario.out_dir = s.Optional<std::string>("out_dir", scenario.out_dir);
    scenario.replicates = s.Optional<uint32_t>("replicates", scenario.replicates);
    if (scenario.replicates == 0) throw ConfigError("replicates must be at least 1");
    scenario.base_seed = s.Optional<uint64_t>("base_seed", scenario.base_seed);

    if (const nlohmann::json* w = s.OptionalSection("workload")) ParseWorkloadSection(*w, scenario);
    if (const nlohmann::json* sim = s.OptionalSection("sim")) ParseSimSection(*sim, scenario.sim);

    if (const nlohmann::json* sweep = s.OptionalSection("sweep")) {
        StrictSection ss(*sweep, "sweep");
        SweepSpec spec;
        spec.parameter = ss.Optional<std::string>("parameter", spec.parameter);
        if (ss.Has("values")) spec.values = ss.Require<std::vector<double>>("values");
        ss.Done();
        if (spec.parameter != "orphan_pool.max_size") {
            throw ConfigError("unsupported sweep parameter '" + spec.parameter + "'");
        }
        if (spec.values.empty()) throw ConfigError("sweep values must not be empty");
        for (const double v : spec.values) {
            if (!(v >= 1.0) || v != std::floor(v)) {
                throw ConfigError("sweep values for orphan_pool.max_size must be positive integers");
            }
        }
        scenario.sweep = std::move(spec);
    }

    if (const nlohmann::json* outputs = s.OptionalSection("outputs")) {
        StrictSection os(*outputs, "outputs");
        scenario.outputs.audit = os.Optional<bool>("audit", scenario.outputs.audit);
        scenario.outputs.distributions = os.Optional<bool>("distributions", scenario.outputs.distributions);
        scenario.outputs.workload = os.Optional<bool>("workload", scenario.outputs.workload);
        os.Done();
    }

    s.Done();
    return scenario;
}

Scenario LoadScenarioFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse scenario file " + path + ": " + e.what());
    }
    return ParseScenarioJson(j);
}

namespace {

constexpr uint64_t WORKLOAD_SEED_STREAM = 0x57534544; // "WSED"

struct RunPlan {
    uint64_t seed{0};
    bool swept{false};
    double sweep_value{0.0};
    std::string run_dir;
};

} // namespace

Workload BuildScenarioWorkload(const Scenario& scenario, uint64_t run_seed)
{
    if (!scenario.workload_import_path.empty()) {
        Workload w = ReadWorkloadJsonlFile(scenario.workload_import_path);
        for (const uint32_t origin : w.origin_nodes) {
            if (origin >= scenario.sim.node_count) {
                throw ConfigError("imported workload origin node " + std::to_string(origin) +
                                  " is out of range for node_count " +
                                  std::to_string(scenario.sim.node_count));
            }
        }
        return w;
    }
    WorkloadConfig cfg = scenario.workload;
    if (!scenario.workload_seed_fixed) cfg.seed = DeriveSeed(run_seed, WORKLOAD_SEED_STREAM);
    return BuildWorkload(cfg, scenario.sim.node_count);
}

namespace {

void WriteDistributionExports(const RunReport& report, const Workload& workload, const std::string& dir)
{
    std::filesystem::create_directories(dir);

    std::vector<double> size;
    std::vector<double> fee;
    std::vector<double> rate;
    std::vector<double> parents;
    size.reserve(workload.txs.size());
    for (const Transaction& tx : workload.txs) {
        size.push_back(static_cast<double>(tx.size_bytes));
        fee.push_back(static_cast<double>(tx.fee_sat));
        rate.push_back(FeePerByte(tx));
        parents.push_back(static_cast<double>(tx.parents.size()));
    }
    WriteCcdfCsvFile(size, "size_bytes", dir + "/tx_size_bytes.ccdf.csv");
    WriteCdfCsvFile(fee, "fee_sat", dir + "/tx_fee_sat.cdf.csv");
    WriteCdfCsvFile(rate, "fee_rate", dir + "/tx_fee_rate.cdf.csv");
    WriteCcdfCsvFile(parents, "parent_count", dir + "/tx_parent_count.ccdf.csv");

    if (!report.missing_parent_size_samples.empty()) {
        WriteCcdfCsvFile(report.missing_parent_size_samples, "size_bytes",
                         dir + "/missing_parent_size_bytes.ccdf.csv");
        WriteCdfCsvFile(report.missing_parent_fee_rate_samples, "fee_rate",
                        dir + "/missing_parent_fee_rate.cdf.csv");
    }
    if (!report.orphan_parent_count_samples.empty()) {
        WriteCcdfCsvFile(report.orphan_parent_count_samples, "parent_count",
                         dir + "/orphan_parent_count.ccdf.csv");
    }
    if (!report.non_orphan_parent_count_samples.empty()) {
        WriteCcdfCsvFile(report.non_orphan_parent_count_samples, "parent_count",
                         dir + "/non_orphan_parent_count.ccdf.csv");
    }
}

RunArtifacts ExecuteRun(const Scenario& scenario, const RunPlan& plan)
{
    const auto wall_start = std::chrono::system_clock::now();
    const auto tick_start = std::chrono::steady_clock::now();

    Workload workload = BuildScenarioWorkload(scenario, plan.seed);

    SimConfig sim = scenario.sim;
    sim.seed = plan.seed;
    if (plan.swept) {
        sim.pool.max_size = static_cast<size_t>(plan.sweep_value);
        sim.pool_sizes_per_node.clear();
    }

    std::filesystem::create_directories(plan.run_dir);

    RunArtifacts artifacts;
    artifacts.seed = plan.seed;
    artifacts.swept = plan.swept;
    artifacts.sweep_value = plan.sweep_value;
    artifacts.run_dir = plan.run_dir;
    artifacts.report_path = plan.run_dir + "/report.json";

    if (scenario.outputs.audit) {
        std::ofstream audit_out(plan.run_dir + "/audit.jsonl", std::ios::binary);
        if (!audit_out) throw ConfigError("cannot open audit file for writing in " + plan.run_dir);
        AuditJsonlWriter audit(audit_out);
        artifacts.report = RunSimulation(sim, workload, &audit);
        if (!audit_out) throw ConfigError("failed writing audit file in " + plan.run_dir);
    } else {
        artifacts.report = RunSimulation(sim, workload);
    }
    artifacts.report.scenario_name = scenario.name;
    artifacts.report.seed = plan.seed;

    WriteReportJsonFile(artifacts.report, artifacts.report_path);
    if (scenario.outputs.workload) {
        WriteWorkloadJsonlFile(workload, plan.run_dir + "/workload.jsonl");
    }
    if (scenario.outputs.distributions) {
        WriteDistributionExports(artifacts.report, workload, plan.run_dir + "/distributions");
    }

    // Wall-clock facts stay out of the deterministic artifacts.
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tick_start).count();
    nlohmann::json meta;
    meta["schema_version"] = REPORT_SCHEMA_VERSION;
    meta["tool_version"] = TOOL_VERSION;
    meta["started_unix_s"] =
        std::chrono::duration_cast<std::chrono::seconds>(wall_start.time_since_epoch()).count();
    meta["elapsed_s"] = elapsed;
    std::ofstream meta_out(plan.run_dir + "/meta.json", std::ios::binary);
    meta_out << meta.dump(1) << '\n';

    return artifacts;
}

std::vector<RunArtifacts> ExecutePlans(const Scenario& scenario, const std::vector<RunPlan>& plans,
                                       unsigned jobs)
{
    std::vector<RunArtifacts> results(plans.size());
    if (jobs <= 1 || plans.size() <= 1) {
        for (size_t i = 0; i < plans.size(); ++i) results[i] = ExecuteRun(scenario, plans[i]);
        return results;
    }

    std::vector<std::exception_ptr> failures(plans.size());
    std::atomic<size_t> next{0};
    const unsigned worker_count = std::min<unsigned>(jobs, static_cast<unsigned>(plans.size()));
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= plans.size()) return;
                try {
                    results[i] = ExecuteRun(scenario, plans[i]);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return results;
}

std::string SweepValueDir(double value)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "max_size_%.0f", value);
    return std::string(buf);
}

double MeanOverNodes(const RunReport& report, double (*pick)(const NodeStats&))
{
    if (report.nodes.empty()) return 0.0;
    double sum = 0.0;
    for (const NodeStats& s : report.nodes) sum += pick(s);
    return sum / static_cast<double>(report.nodes.size());
}

} // namespace

std::vector<RunArtifacts> RunScenario(const Scenario& scenario, unsigned jobs)
{
    const std::string base = scenario.out_dir + "/" + scenario.name;
    std::vector<RunPlan> plans;
    plans.reserve(scenario.replicates);
    for (uint32_t i = 0; i < scenario.replicates; ++i) {
        RunPlan plan;
        plan.seed = scenario.base_seed + i;
        plan.run_dir = base + "/seed_" + std::to_string(plan.seed);
        plans.push_back(std::move(plan));
    }
    std::vector<RunArtifacts> results = ExecutePlans(scenario, plans, jobs);

    std::vector<RunReport> reports;
    reports.reserve(results.size());
    for (const RunArtifacts& r : results) reports.push_back(r.report);
    WriteMergedCsvFile(reports, base + "/report.csv");
    return results;
}

std::vector<RunArtifacts> RunSweep(const Scenario& scenario, unsigned jobs)
{
    const SweepSpec spec = scenario.sweep.value_or(SweepSpec{});
    const std::string base = scenario.out_dir + "/" + scenario.name;

    std::vector<RunPlan> plans;
    plans.reserve(spec.values.size() * scenario.replicates);
    for (const double value : spec.values) {
        for (uint32_t i = 0; i < scenario.replicates; ++i) {
            RunPlan plan;
            plan.seed = scenario.base_seed + i;
            plan.swept = true;
            plan.sweep_value = value;
            plan.run_dir = base + "/" + SweepValueDir(value) + "/seed_" + std::to_string(plan.seed);
            plans.push_back(std::move(plan));
        }
    }
    std::vector<RunArtifacts> results = ExecutePlans(scenario, plans, jobs);

    // Per-seed normalization base: the pool-100 mean unique count, falling
    // back to the largest swept pool size when 100 is not in the ladder.
    double base_value = 100.0;
    if (std::find(spec.values.begin(), spec.values.end(), base_value) == spec.values.end()) {
        base_value = *std::max_element(spec.values.begin(), spec.values.end());
    }
    std::map<uint64_t, double> norm_base;
    for (const RunArtifacts& r : results) {
        if (r.sweep_value == base_value) {
            norm_base[r.seed] = MeanOverNodes(r.report, [](const NodeStats& s) {
                return static_cast<double>(s.unique_orphans);
            });
        }
    }

    std::ofstream causes(base + "/removal_causes_by_pool_size.csv", std::ios::binary);
    if (!causes) throw ConfigError("cannot open sweep CSV for writing in " + base);
    causes << "pool_size,seed,cause,count,fraction\n";

    std::ofstream additions(base + "/orphan_additions_by_pool_size.csv", std::ios::binary);
    additions << "pool_size,seed,unique_mean,total_mean,ratio,unique_norm,total_norm\n";

    std::ofstream overhead(base + "/network_overhead_by_pool_size.csv", std::ios::binary);
    overhead << "pool_size,seed,unique_bytes,duplicate_bytes,duplicate_fraction\n";

    for (const RunArtifacts& r : results) {
        uint64_t removals_total = 0;
        std::array<uint64_t, REMOVAL_CAUSE_COUNT> counts{};
        uint64_t unique_sum = 0;
        uint64_t total_sum = 0;
        for (const NodeStats& s : r.report.nodes) {
            for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) counts[c] += s.removal_counts[c];
            unique_sum += s.unique_orphans;
            total_sum += s.total_orphan_additions;
        }
        for (const uint64_t c : counts) removals_total += c;

        for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) {
            const double fraction = removals_total == 0
                                        ? 0.0
                                        : static_cast<double>(counts[c]) / static_cast<double>(removals_total);
            causes << FormatCsvDouble(r.sweep_value) << ',' << r.seed << ','
                   << RemovalCauseName(static_cast<RemovalCause>(c)) << ',' << counts[c] << ','
                   << FormatCsvDouble(fraction) << '\n';
        }

        const double node_count = static_cast<double>(r.report.nodes.size());
        const double unique_mean = static_cast<double>(unique_sum) / node_count;
        const double total_mean = static_cast<double>(total_sum) / node_count;
        const double ratio = unique_sum == 0 ? 0.0
                                             : static_cast<double>(total_sum) / static_cast<double>(unique_sum);
        const double nb = norm_base.count(r.seed) ? norm_base[r.seed] : 0.0;
        additions << FormatCsvDouble(r.sweep_value) << ',' << r.seed << ',' << FormatCsvDouble(unique_mean)
                  << ',' << FormatCsvDouble(total_mean) << ',' << FormatCsvDouble(ratio) << ','
                  << FormatCsvDouble(nb == 0.0 ? 0.0 : unique_mean / nb) << ','
                  << FormatCsvDouble(nb == 0.0 ? 0.0 : total_mean / nb) << '\n';

        const uint64_t unique_bytes = ORPHAN_RECEIPT_BYTES * unique_sum;
        const uint64_t duplicate_bytes = ORPHAN_RECEIPT_BYTES * (total_sum - unique_sum);
        const double duplicate_fraction =
            unique_bytes + duplicate_bytes == 0
                ? 0.0
                : static_cast<double>(duplicate_bytes) / static_cast<double>(unique_bytes + duplicate_bytes);
        overhead << FormatCsvDouble(r.sweep_value) << ',' << r.seed << ',' << unique_bytes << ','
                 << duplicate_bytes << ',' << FormatCsvDouble(duplicate_fraction) << '\n';
    }

    std::vector<RunReport> reports;
    reports.reserve(results.size());
    for (const RunArtifacts& r : results) reports.push_back(r.report);
    WriteMergedCsvFile(reports, base + "/report.csv");
    return results;
}

void CompareReports(const std::vector<std::string>& report_paths, const std::string& out_csv_path)
{
    if (report_paths.size() < 2) throw ConfigError("comparison needs at least two report files");

    std::vector<RunReport> reports;
    reports.reserve(report_paths.size());
    for (const std::string& path : report_paths) reports.push_back(ReadReportJsonFile(path));

    struct Accum {
        uint64_t runs{0};
        double unique{0.0};
        double total{0.0};
        std::array<double, REMOVAL_CAUSE_COUNT> fractions{};
        double duplicate_fraction{0.0};
        double mem_peak{0.0};
    };
    std::map<std::pair<uint32_t, uint32_t>, Accum> rows; // (pool size, node)

    double norm_base_sum = 0.0;
    uint64_t norm_base_n = 0;

    for (const RunReport& report : reports) {
        for (const NodeStats& s : report.nodes) {
            Accum& a = rows[{s.pool_max_size, s.node}];
            ++a.runs;
            a.unique += static_cast<double>(s.unique_orphans);
            a.total += static_cast<double>(s.total_orphan_additions);
            const uint64_t removals = s.TotalRemovals();
            for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) {
                a.fractions[c] += removals == 0 ? 0.0
                                                : static_cast<double>(s.removal_counts[c]) /
                                                      static_cast<double>(removals);
            }
            a.duplicate_fraction += ComputeNetworkOverhead(s).duplicate_fraction;
            uint64_t peak = 0;
            for (const MemorySample& sample : s.memory_series) {
                peak = std::max(peak, sample.breakdown.TotalBytes());
            }
            a.mem_peak += static_cast<double>(peak);

            if (s.pool_max_size == 100) {
                norm_base_sum += static_cast<double>(s.unique_orphans);
                ++norm_base_n;
            }
        }
    }
    const double norm_base = norm_base_n == 0 ? 0.0 : norm_base_sum / static_cast<double>(norm_base_n);

    std::ofstream out(out_csv_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open comparison CSV for writing: " + out_csv_path);
    out << "pool_size,node,runs,unique_mean,total_mean,ratio,unique_norm";
    for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) {
        out << ",frac_" << RemovalCauseName(static_cast<RemovalCause>(c));
    }
    out << ",duplicate_fraction,mem_peak_total_bytes_mean\n";

    for (const auto& [key, a] : rows) {
        const double runs = static_cast<double>(a.runs);
        const double unique_mean = a.unique / runs;
        const double total_mean = a.total / runs;
        out << key.first << ',' << key.second << ',' << a.runs << ',' << FormatCsvDouble(unique_mean)
            << ',' << FormatCsvDouble(total_mean) << ','
            << FormatCsvDouble(unique_mean == 0.0 ? 0.0 : total_mean / unique_mean) << ','
            << FormatCsvDouble(norm_base == 0.0 ? 0.0 : unique_mean / norm_base);
        for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) {
            out << ',' << FormatCsvDouble(a.fractions[c] / runs);
        }
        out << ',' << FormatCsvDouble(a.duplicate_fraction / runs) << ','
            << FormatCsvDouble(a.mem_peak / runs) << '\n';
    }
    if (!out) throw ConfigError("failed writing comparison CSV: " + out_csv_path);
}

} // namespace orphansim
