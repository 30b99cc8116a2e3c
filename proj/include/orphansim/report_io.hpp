// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_REPORT_IO_HPP
#define ORPHANSIM_REPORT_IO_HPP

#include <orphansim/metrics.hpp>
#include <orphansim/node.hpp>

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace orphansim {

nlohmann::json ReportToJson(const RunReport& report);
void WriteReportJsonFile(const RunReport& report, const std::string& path);

//! Inverse of ReportToJson. Unparseable input raises ConfigError; a wrong or
//! missing schema_version (or missing fields) raises SchemaError.
RunReport ReportFromJson(const nlohmann::json& j);
RunReport ReadReportJsonFile(const std::string& path);

//! Long-format rows (seed,node,family,metric,value), one block per report.
void WriteMergedCsv(std::span<const RunReport> reports, std::ostream& out);
void WriteMergedCsvFile(std::span<const RunReport> reports, const std::string& path);

//! Two-column distribution exports over raw samples.
void WriteCcdfCsvFile(std::span<const double> samples, const std::string& value_name,
                      const std::string& path);
void WriteCdfCsvFile(std::span<const double> samples, const std::string& value_name,
                     const std::string& path);

//! Deterministic "%.12g" float rendering shared by every CSV writer.
std::string FormatCsvDouble(double value);

/**
 * Streams pool events as JSONL: a header record, then one record per
 * addition ({time_s, event, node, txid, peer}) or erase (same plus cause).
 * Timestamps use fixed six-decimal seconds.
 */
class AuditJsonlWriter : public NodeObserver
{
public:
    explicit AuditJsonlWriter(std::ostream& out);

    void OnOrphanAdd(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer) override;
    void OnOrphanErase(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer,
                       RemovalCause cause) override;
    void OnMissingParents(uint32_t, int64_t, std::span<const TxId>) override {}

private:
    std::ostream& m_out;
};

//! Replays an audit stream into a collector, validating the header and every
//! record. Returns the number of event records consumed.
size_t ReplayAuditJsonl(std::istream& in, MetricsCollector& collector);

} // namespace orphansim

#endif // ORPHANSIM_REPORT_IO_HPP
