// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/report_io.hpp>

#include <orphansim/error.hpp>
#include <orphansim/time_units.hpp>

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace orphansim {

namespace {

nlohmann::json SummaryToJson(const DistributionSummary& s)
{
    nlohmann::json j;
    j["count"] = s.count;
    j["mean"] = s.mean;
    j["stddev"] = s.stddev;
    j["min"] = s.min;
    j["max"] = s.max;
    j["p25"] = s.p25;
    j["p50"] = s.p50;
    j["p75"] = s.p75;
    j["p90"] = s.p90;
    j["p99"] = s.p99;
    return j;
}

DistributionSummary SummaryFromJson(const nlohmann::json& j)
{
    DistributionSummary s;
    s.count = j.at("count").get<uint64_t>();
    s.mean = j.at("mean").get<double>();
    s.stddev = j.at("stddev").get<double>();
    s.min = j.at("min").get<double>();
    s.max = j.at("max").get<double>();
    s.p25 = j.at("p25").get<double>();
    s.p50 = j.at("p50").get<double>();
    s.p75 = j.at("p75").get<double>();
    s.p90 = j.at("p90").get<double>();
    s.p99 = j.at("p99").get<double>();
    return s;
}

nlohmann::json RemovalCountsToJson(const std::array<uint64_t, REMOVAL_CAUSE_COUNT>& counts)
{
    nlohmann::json j;
    for (size_t i = 0; i < REMOVAL_CAUSE_COUNT; ++i) {
        j[RemovalCauseName(static_cast<RemovalCause>(i))] = counts[i];
    }
    return j;
}

std::array<uint64_t, REMOVAL_CAUSE_COUNT> RemovalCountsFromJson(const nlohmann::json& j)
{
    std::array<uint64_t, REMOVAL_CAUSE_COUNT> counts{};
    for (size_t i = 0; i < REMOVAL_CAUSE_COUNT; ++i) {
        counts[i] = j.at(RemovalCauseName(static_cast<RemovalCause>(i))).get<uint64_t>();
    }
    return counts;
}

} // namespace

nlohmann::json ReportToJson(const RunReport& report)
{
    nlohmann::json j;
    j["schema_version"] = report.schema_version;
    j["scenario"] = report.scenario_name;
    j["seed"] = report.seed;
    j["node_count"] = report.node_count;
    j["tx_count"] = report.tx_count;
    j["run_duration_s"] = MicrosToSeconds(report.run_duration_us);

    nlohmann::json workload;
    workload["fee_sat"] = SummaryToJson(report.all_tx_fee);
    workload["size_bytes"] = SummaryToJson(report.all_tx_size);
    workload["fee_rate"] = SummaryToJson(report.all_tx_fee_rate);
    workload["parent_count"] = SummaryToJson(report.all_tx_parent_count);
    j["workload"] = std::move(workload);

    nlohmann::json orphans;
    orphans["unique"] = report.unique_orphans;
    orphans["total_additions"] = report.total_orphan_additions;
    orphans["orphan_rate"] = report.orphan_rate;
    orphans["removal_counts"] = RemovalCountsToJson(report.removal_counts);
    nlohmann::json missing;
    missing["fee_sat"] = SummaryToJson(report.missing_parent_fee);
    missing["size_bytes"] = SummaryToJson(report.missing_parent_size);
    missing["fee_rate"] = SummaryToJson(report.missing_parent_fee_rate);
    orphans["missing_parents"] = std::move(missing);
    j["orphans"] = std::move(orphans);

    nlohmann::json nodes = nlohmann::json::array();
    for (const NodeStats& s : report.nodes) {
        nlohmann::json n;
        n["node"] = s.node;
        n["pool_max_size"] = s.pool_max_size;
        n["min_fee_rate"] = s.min_fee_rate;
        n["unique_orphans"] = s.unique_orphans;
        n["total_additions"] = s.total_orphan_additions;
        n["removal_counts"] = RemovalCountsToJson(s.removal_counts);

        const NetworkOverhead overhead = ComputeNetworkOverhead(s);
        nlohmann::json o;
        o["unique_bytes"] = overhead.unique_bytes;
        o["duplicate_bytes"] = overhead.duplicate_bytes;
        o["duplicate_fraction"] = overhead.duplicate_fraction;
        n["network_overhead"] = std::move(o);

        n["orphans_confirmed_in_blocks"] = s.orphans_confirmed_in_blocks;
        n["peak_pool_size"] = s.peak_pool_size;
        n["final_pool_size"] = s.final_pool_size;
        n["mempool_final"] = s.mempool_final;
        n["confirmed_final"] = s.confirmed_final;

        nlohmann::json msgs;
        msgs["inv_sent"] = s.inv_sent;
        msgs["inv_received"] = s.inv_received;
        msgs["getdata_sent"] = s.getdata_sent;
        msgs["getdata_received"] = s.getdata_received;
        msgs["tx_sent"] = s.tx_sent;
        msgs["tx_received"] = s.tx_received;
        msgs["blocks_received"] = s.blocks_received;
        n["messages"] = std::move(msgs);

        nlohmann::json parent_count;
        parent_count["orphan"] = SummaryToJson(s.orphan_parent_count);
        parent_count["non_orphan"] = SummaryToJson(s.non_orphan_parent_count);
        n["parent_count"] = std::move(parent_count);

        nlohmann::json node_missing;
        node_missing["fee_sat"] = SummaryToJson(s.missing_parent_fee);
        node_missing["size_bytes"] = SummaryToJson(s.missing_parent_size);
        node_missing["fee_rate"] = SummaryToJson(s.missing_parent_fee_rate);
        n["missing_parents"] = std::move(node_missing);

        nlohmann::json series = nlohmann::json::array();
        uint64_t peak_total = 0;
        double total_sum = 0.0;
        for (const MemorySample& sample : s.memory_series) {
            nlohmann::json row;
            row["time_s"] = MicrosToSeconds(sample.at_us);
            row["entry_bytes"] = sample.breakdown.entry_bytes;
            row["parent_link_bytes"] = sample.breakdown.parent_link_bytes;
            row["eviction_list_bytes"] = sample.breakdown.eviction_list_bytes;
            row["total_bytes"] = sample.breakdown.TotalBytes();
            series.push_back(std::move(row));
            peak_total = std::max(peak_total, sample.breakdown.TotalBytes());
            total_sum += static_cast<double>(sample.breakdown.TotalBytes());
        }
        nlohmann::json memory;
        memory["series"] = std::move(series);
        memory["peak_total_bytes"] = peak_total;
        memory["mean_total_bytes"] =
            s.memory_series.empty() ? 0.0 : total_sum / static_cast<double>(s.memory_series.size());
        n["memory"] = std::move(memory);

        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

void WriteReportJsonFile(const RunReport& report, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open report file for writing: " + path);
    out << ReportToJson(report).dump(1) << '\n';
    if (!out) throw ConfigError("failed writing report file: " + path);
}

RunReport ReportFromJson(const nlohmann::json& j)
{
    uint32_t version = 0;
    try {
        version = j.at("schema_version").get<uint32_t>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError("report lacks a schema_version field");
    }
    if (version != REPORT_SCHEMA_VERSION) {
        throw SchemaError("unsupported report schema_version " + std::to_string(version) +
                          " (expected " + std::to_string(REPORT_SCHEMA_VERSION) + ")");
    }

    try {
        RunReport report;
        report.schema_version = version;
        report.scenario_name = j.at("scenario").get<std::string>();
        report.seed = j.at("seed").get<uint64_t>();
        report.node_count = j.at("node_count").get<uint32_t>();
        report.tx_count = j.at("tx_count").get<uint64_t>();
        report.run_duration_us = SecondsToMicros(j.at("run_duration_s").get<double>());

        const auto& workload = j.at("workload");
        report.all_tx_fee = SummaryFromJson(workload.at("fee_sat"));
        report.all_tx_size = SummaryFromJson(workload.at("size_bytes"));
        report.all_tx_fee_rate = SummaryFromJson(workload.at("fee_rate"));
        report.all_tx_parent_count = SummaryFromJson(workload.at("parent_count"));

        const auto& orphans = j.at("orphans");
        report.unique_orphans = orphans.at("unique").get<uint64_t>();
        report.total_orphan_additions = orphans.at("total_additions").get<uint64_t>();
        report.orphan_rate = orphans.at("orphan_rate").get<double>();
        report.removal_counts = RemovalCountsFromJson(orphans.at("removal_counts"));
        report.missing_parent_fee = SummaryFromJson(orphans.at("missing_parents").at("fee_sat"));
        report.missing_parent_size = SummaryFromJson(orphans.at("missing_parents").at("size_bytes"));
        report.missing_parent_fee_rate = SummaryFromJson(orphans.at("missing_parents").at("fee_rate"));

        for (const auto& n : j.at("nodes")) {
            NodeStats s;
            s.node = n.at("node").get<uint32_t>();
            s.pool_max_size = n.at("pool_max_size").get<uint32_t>();
            s.min_fee_rate = n.at("min_fee_rate").get<double>();
            s.unique_orphans = n.at("unique_orphans").get<uint64_t>();
            s.total_orphan_additions = n.at("total_additions").get<uint64_t>();
            s.removal_counts = RemovalCountsFromJson(n.at("removal_counts"));
            s.orphans_confirmed_in_blocks = n.at("orphans_confirmed_in_blocks").get<uint64_t>();
            s.peak_pool_size = n.at("peak_pool_size").get<uint64_t>();
            s.final_pool_size = n.at("final_pool_size").get<uint64_t>();
            s.mempool_final = n.at("mempool_final").get<uint64_t>();
            s.confirmed_final = n.at("confirmed_final").get<uint64_t>();

            const auto& msgs = n.at("messages");
            s.inv_sent = msgs.at("inv_sent").get<uint64_t>();
            s.inv_received = msgs.at("inv_received").get<uint64_t>();
            s.getdata_sent = msgs.at("getdata_sent").get<uint64_t>();
            s.getdata_received = msgs.at("getdata_received").get<uint64_t>();
            s.tx_sent = msgs.at("tx_sent").get<uint64_t>();
            s.tx_received = msgs.at("tx_received").get<uint64_t>();
            s.blocks_received = msgs.at("blocks_received").get<uint64_t>();

            s.orphan_parent_count = SummaryFromJson(n.at("parent_count").at("orphan"));
            s.non_orphan_parent_count = SummaryFromJson(n.at("parent_count").at("non_orphan"));
            s.missing_parent_fee = SummaryFromJson(n.at("missing_parents").at("fee_sat"));
            s.missing_parent_size = SummaryFromJson(n.at("missing_parents").at("size_bytes"));
            s.missing_parent_fee_rate = SummaryFromJson(n.at("missing_parents").at("fee_rate"));

            for (const auto& row : n.at("memory").at("series")) {
                MemorySample sample;
                sample.at_us = SecondsToMicros(row.at("time_s").get<double>());
                sample.breakdown.entry_bytes = row.at("entry_bytes").get<uint64_t>();
                sample.breakdown.parent_link_bytes = row.at("parent_link_bytes").get<uint64_t>();
                sample.breakdown.eviction_list_bytes = row.at("eviction_list_bytes").get<uint64_t>();
                s.memory_series.push_back(sample);
            }
            report.nodes.push_back(std::move(s));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    }
}

RunReport ReadReportJsonFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open report file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse report file " + path + ": " + e.what());
    }
    return ReportFromJson(j);
}

std::string FormatCsvDouble(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return std::string(buf);
}

namespace {

void AppendRow(std::ostream& out, uint64_t seed, uint32_t node, const char* family,
               const char* metric, const std::string& value)
{
    out << seed << ',' << node << ',' << family << ',' << metric << ',' << value << '\n';
}

void AppendRow(std::ostream& out, uint64_t seed, uint32_t node, const char* family,
               const char* metric, uint64_t value)
{
    AppendRow(out, seed, node, family, metric, std::to_string(value));
}

void AppendRow(std::ostream& out, uint64_t seed, uint32_t node, const char* family,
               const char* metric, double value)
{
    AppendRow(out, seed, node, family, metric, FormatCsvDouble(value));
}

} // namespace

void WriteMergedCsv(std::span<const RunReport> reports, std::ostream& out)
{
    out << "seed,node,family,metric,value\n";
    for (const RunReport& report : reports) {
        for (const NodeStats& s : report.nodes) {
            const uint64_t seed = report.seed;
            for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) {
                AppendRow(out, seed, s.node, "removal_causes",
                          RemovalCauseName(static_cast<RemovalCause>(c)), s.removal_counts[c]);
            }
            AppendRow(out, seed, s.node, "removal_causes", "total", s.TotalRemovals());

            AppendRow(out, seed, s.node, "additions", "unique", s.unique_orphans);
            AppendRow(out, seed, s.node, "additions", "total", s.total_orphan_additions);
            const double ratio = s.unique_orphans == 0
                                     ? 0.0
                                     : static_cast<double>(s.total_orphan_additions) /
                                           static_cast<double>(s.unique_orphans);
            AppendRow(out, seed, s.node, "additions", "ratio", ratio);

            const NetworkOverhead overhead = ComputeNetworkOverhead(s);
            AppendRow(out, seed, s.node, "network_overhead", "unique_bytes", overhead.unique_bytes);
            AppendRow(out, seed, s.node, "network_overhead", "duplicate_bytes", overhead.duplicate_bytes);
            AppendRow(out, seed, s.node, "network_overhead", "duplicate_fraction", overhead.duplicate_fraction);

            uint64_t peak_total = 0;
            double total_sum = 0.0;
            for (const MemorySample& sample : s.memory_series) {
                peak_total = std::max(peak_total, sample.breakdown.TotalBytes());
                total_sum += static_cast<double>(sample.breakdown.TotalBytes());
            }
            AppendRow(out, seed, s.node, "memory", "peak_total_bytes", peak_total);
            AppendRow(out, seed, s.node, "memory", "mean_total_bytes",
                      s.memory_series.empty() ? 0.0
                                              : total_sum / static_cast<double>(s.memory_series.size()));

            AppendRow(out, seed, s.node, "pool", "max_size", static_cast<uint64_t>(s.pool_max_size));
            AppendRow(out, seed, s.node, "pool", "peak_size", s.peak_pool_size);
            AppendRow(out, seed, s.node, "pool", "final_size", s.final_pool_size);
            AppendRow(out, seed, s.node, "pool", "orphans_confirmed_in_blocks", s.orphans_confirmed_in_blocks);

            AppendRow(out, seed, s.node, "policy", "min_fee_rate", s.min_fee_rate);
            AppendRow(out, seed, s.node, "mempool", "final_size", s.mempool_final);
            AppendRow(out, seed, s.node, "mempool", "confirmed_final", s.confirmed_final);

            AppendRow(out, seed, s.node, "messages", "inv_sent", s.inv_sent);
            AppendRow(out, seed, s.node, "messages", "inv_received", s.inv_received);
            AppendRow(out, seed, s.node, "messages", "getdata_sent", s.getdata_sent);
            AppendRow(out, seed, s.node, "messages", "getdata_received", s.getdata_received);
            AppendRow(out, seed, s.node, "messages", "tx_sent", s.tx_sent);
            AppendRow(out, seed, s.node, "messages", "tx_received", s.tx_received);
            AppendRow(out, seed, s.node, "messages", "blocks_received", s.blocks_received);

            AppendRow(out, seed, s.node, "parent_count", "orphan_mean", s.orphan_parent_count.mean);
            AppendRow(out, seed, s.node, "parent_count", "non_orphan_mean", s.non_orphan_parent_count.mean);

            AppendRow(out, seed, s.node, "missing_parents", "count", s.missing_parent_fee.count);
            AppendRow(out, seed, s.node, "missing_parents", "mean_fee_sat", s.missing_parent_fee.mean);
            AppendRow(out, seed, s.node, "missing_parents", "mean_size_bytes", s.missing_parent_size.mean);
            AppendRow(out, seed, s.node, "missing_parents", "mean_fee_rate", s.missing_parent_fee_rate.mean);
        }
    }
}

void WriteMergedCsvFile(std::span<const RunReport> reports, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open CSV file for writing: " + path);
    WriteMergedCsv(reports, out);
    if (!out) throw ConfigError("failed writing CSV file: " + path);
}

void WriteCcdfCsvFile(std::span<const double> samples, const std::string& value_name,
                      const std::string& path)
{
    const auto points = Ccdf(samples);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open CSV file for writing: " + path);
    out << value_name << ",ccdf\n";
    for (const auto& [value, p] : points) {
        out << FormatCsvDouble(value) << ',' << FormatCsvDouble(p) << '\n';
    }
}

void WriteCdfCsvFile(std::span<const double> samples, const std::string& value_name,
                     const std::string& path)
{
    const auto points = Ccdf(samples);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open CSV file for writing: " + path);
    out << value_name << ",cdf\n";
    for (const auto& [value, p] : points) {
        out << FormatCsvDouble(value) << ',' << FormatCsvDouble(1.0 - p) << '\n';
    }
}

AuditJsonlWriter::AuditJsonlWriter(std::ostream& out) : m_out(out)
{
    m_out << "{\"schema_version\":" << REPORT_SCHEMA_VERSION << ",\"stream\":\"orphan_audit\"}\n";
}

void AuditJsonlWriter::OnOrphanAdd(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer)
{
    m_out << "{\"time_s\":" << FormatSeconds(now_us) << ",\"event\":\"orphan_add\",\"node\":" << node
          << ",\"txid\":\"" << id.ToHex() << "\",\"peer\":" << from_peer << "}\n";
}

void AuditJsonlWriter::OnOrphanErase(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer,
                                     RemovalCause cause)
{
    m_out << "{\"time_s\":" << FormatSeconds(now_us) << ",\"event\":\"orphan_erase\",\"node\":" << node
          << ",\"txid\":\"" << id.ToHex() << "\",\"peer\":" << from_peer << ",\"cause\":\""
          << RemovalCauseName(cause) << "\"}\n";
}

size_t ReplayAuditJsonl(std::istream& in, MetricsCollector& collector)
{
    std::string line;
    size_t line_no = 0;
    size_t events = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("audit line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        if (!saw_header) {
            if (!j.contains("schema_version") || !j.contains("stream")) {
                throw SchemaError("audit stream lacks a header record");
            }
            if (j.at("schema_version").get<uint32_t>() != REPORT_SCHEMA_VERSION) {
                throw SchemaError("unsupported audit schema_version");
            }
            saw_header = true;
            continue;
        }

        try {
            const std::string event = j.at("event").get<std::string>();
            const uint32_t node = j.at("node").get<uint32_t>();
            const auto id = TxId::FromHex(j.at("txid").get<std::string>());
            if (!id) throw ConfigError("audit line " + std::to_string(line_no) + ": bad txid");
            const int64_t now_us = SecondsToMicros(j.at("time_s").get<double>());
            if (event == "orphan_add") {
                collector.RecordAdd(node, now_us, *id);
            } else if (event == "orphan_erase") {
                RemovalCause cause;
                if (!RemovalCauseFromName(j.at("cause").get<std::string>(), cause)) {
                    throw ConfigError("audit line " + std::to_string(line_no) + ": unknown cause");
                }
                collector.RecordErase(node, now_us, *id, cause);
            } else {
                throw ConfigError("audit line " + std::to_string(line_no) + ": unknown event '" + event + "'");
            }
            ++events;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("audit line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!saw_header) throw SchemaError("audit stream lacks a header record");
    return events;
}

} // namespace orphansim
