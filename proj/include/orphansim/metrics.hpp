// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_METRICS_HPP
#define ORPHANSIM_METRICS_HPP

#include <orphansim/orphan_pool.hpp>
#include <orphansim/txid.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace orphansim {

//! Wire cost of learning about one orphan: a 32-byte inv hash plus the
//! 32-byte getdata hash it triggers.
inline constexpr uint64_t ORPHAN_RECEIPT_BYTES = 64;

inline constexpr uint32_t REPORT_SCHEMA_VERSION = 1;

struct DistributionSummary {
    uint64_t count{0};
    double mean{0.0};
    double stddev{0.0};
    double min{0.0};
    double max{0.0};
    double p25{0.0};
    double p50{0.0};
    double p75{0.0};
    double p90{0.0};
    double p99{0.0};
};

//! Population summary; throws ConfigError on an empty sample.
DistributionSummary Summarize(std::span<const double> samples);
//! Zero-filled summary (count 0) on empty input instead of throwing.
DistributionSummary SummarizeOrZero(std::span<const double> samples);

//! Complementary CDF over the distinct sample values: (v, P(X > v)),
//! ascending in v. Throws ConfigError on an empty sample.
std::vector<std::pair<double, double>> Ccdf(std::span<const double> samples);

struct NetworkOverhead {
    uint64_t unique_bytes{0};
    uint64_t duplicate_bytes{0};
    //! duplicate / (unique + duplicate); 0 when nothing was received.
    double duplicate_fraction{0.0};
};

struct MemorySample {
    int64_t at_us{0};
    OverheadBreakdown breakdown;
};

struct NodeStats {
    uint32_t node{0};
    uint32_t pool_max_size{0};
    double min_fee_rate{0.0};

    std::array<uint64_t, REMOVAL_CAUSE_COUNT> removal_counts{};
    uint64_t unique_orphans{0};
    uint64_t total_orphan_additions{0};
    uint64_t orphans_confirmed_in_blocks{0};
    uint64_t peak_pool_size{0};
    uint64_t final_pool_size{0};
    uint64_t mempool_final{0};
    uint64_t confirmed_final{0};

    uint64_t inv_sent{0};
    uint64_t inv_received{0};
    uint64_t getdata_sent{0};
    uint64_t getdata_received{0};
    uint64_t tx_sent{0};
    uint64_t tx_received{0};
    uint64_t blocks_received{0};

    DistributionSummary orphan_parent_count;
    DistributionSummary non_orphan_parent_count;
    DistributionSummary missing_parent_fee;
    DistributionSummary missing_parent_size;
    DistributionSummary missing_parent_fee_rate;

    std::vector<MemorySample> memory_series;

    uint64_t TotalRemovals() const
    {
        uint64_t total = 0;
        for (const uint64_t c : removal_counts) total += c;
        return total;
    }
};

//! Per-cause share of all removals at one node. Throws ConfigError when the
//! node recorded no removals.
std::map<RemovalCause, double> RemovalBreakdown(const NodeStats& stats);

//! 64 bytes per first-time orphan, 64 per repeated addition of a known one.
NetworkOverhead ComputeNetworkOverhead(const NodeStats& stats);

struct RunReport {
    uint32_t schema_version{REPORT_SCHEMA_VERSION};
    std::string scenario_name;
    uint64_t seed{0};
    uint32_t node_count{0};
    uint64_t tx_count{0};
    int64_t run_duration_us{0};

    std::vector<NodeStats> nodes;

    // Workload-wide marginals.
    DistributionSummary all_tx_fee;
    DistributionSummary all_tx_size;
    DistributionSummary all_tx_fee_rate;
    DistributionSummary all_tx_parent_count;

    // Missing parents pooled across nodes (deduplicated per node).
    DistributionSummary missing_parent_fee;
    DistributionSummary missing_parent_size;
    DistributionSummary missing_parent_fee_rate;

    std::array<uint64_t, REMOVAL_CAUSE_COUNT> removal_counts{};
    uint64_t unique_orphans{0};
    uint64_t total_orphan_additions{0};
    //! Mean over nodes of unique_orphans / tx_count.
    double orphan_rate{0.0};

    // Raw pooled samples backing the optional distribution exports. Not part
    // of the serialized report schema.
    std::vector<double> missing_parent_size_samples;
    std::vector<double> missing_parent_fee_rate_samples;
    std::vector<double> orphan_parent_count_samples;
    std::vector<double> non_orphan_parent_count_samples;
};

/**
 * Rebuilds per-node counters from the orphan event stream, independent of
 * the pools that emitted it. Enforces stream integrity: an addition of an
 * already-resident orphan or an erase of a non-resident one throws SimError.
 */
class MetricsCollector
{
public:
    explicit MetricsCollector(uint32_t node_count);

    void RecordAdd(uint32_t node, int64_t now_us, const TxId& id);
    void RecordErase(uint32_t node, int64_t now_us, const TxId& id, RemovalCause cause);

    uint64_t UniqueOrphans(uint32_t node) const { return AtNode(node).seen.size(); }
    uint64_t TotalAdditions(uint32_t node) const { return AtNode(node).total_adds; }
    const std::array<uint64_t, REMOVAL_CAUSE_COUNT>& RemovalCounts(uint32_t node) const
    {
        return AtNode(node).removal_counts;
    }
    bool EverOrphaned(uint32_t node, const TxId& id) const { return AtNode(node).seen.count(id) != 0; }

private:
    struct PerNode {
        std::unordered_set<TxId, TxIdHasher> seen;
        std::unordered_set<TxId, TxIdHasher> resident;
        uint64_t total_adds{0};
        std::array<uint64_t, REMOVAL_CAUSE_COUNT> removal_counts{};
    };

    const PerNode& AtNode(uint32_t node) const;
    PerNode& AtNode(uint32_t node);

    std::vector<PerNode> m_nodes;
};

} // namespace orphansim

#endif // ORPHANSIM_METRICS_HPP
