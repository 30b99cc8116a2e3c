// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/metrics.hpp>

#include <orphansim/error.hpp>

#include <algorithm>
#include <cmath>

namespace orphansim {

namespace {

double QuantileSorted(const std::vector<double>& sorted, double p)
{
    // Nearest-rank on the sorted sample.
    const size_t n = sorted.size();
    size_t rank = static_cast<size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

} // namespace

DistributionSummary Summarize(std::span<const double> samples)
{
    if (samples.empty()) throw ConfigError("cannot summarize an empty sample");

    DistributionSummary s;
    s.count = samples.size();

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const double x : samples) {
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(samples.size());
    s.mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - s.mean * s.mean);
    s.stddev = std::sqrt(var);

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.p25 = QuantileSorted(sorted, 0.25);
    s.p50 = QuantileSorted(sorted, 0.50);
    s.p75 = QuantileSorted(sorted, 0.75);
    s.p90 = QuantileSorted(sorted, 0.90);
    s.p99 = QuantileSorted(sorted, 0.99);
    return s;
}

DistributionSummary SummarizeOrZero(std::span<const double> samples)
{
    if (samples.empty()) return DistributionSummary{};
    return Summarize(samples);
}

std::vector<std::pair<double, double>> Ccdf(std::span<const double> samples)
{
    if (samples.empty()) throw ConfigError("cannot compute a CCDF over an empty sample");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::pair<double, double>> out;
    const double n = static_cast<double>(sorted.size());
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        // j samples are <= sorted[i], so n - j exceed it.
        out.emplace_back(sorted[i], static_cast<double>(sorted.size() - j) / n);
        i = j;
    }
    return out;
}

std::map<RemovalCause, double> RemovalBreakdown(const NodeStats& stats)
{
    const uint64_t total = stats.TotalRemovals();
    if (total == 0) throw ConfigError("node recorded no orphan removals");

    std::map<RemovalCause, double> out;
    for (size_t i = 0; i < REMOVAL_CAUSE_COUNT; ++i) {
        out[static_cast<RemovalCause>(i)] =
            static_cast<double>(stats.removal_counts[i]) / static_cast<double>(total);
    }
    return out;
}

NetworkOverhead ComputeNetworkOverhead(const NodeStats& stats)
{
    NetworkOverhead o;
    o.unique_bytes = ORPHAN_RECEIPT_BYTES * stats.unique_orphans;
    o.duplicate_bytes = ORPHAN_RECEIPT_BYTES * (stats.total_orphan_additions - stats.unique_orphans);
    const uint64_t all = o.unique_bytes + o.duplicate_bytes;
    o.duplicate_fraction = all == 0 ? 0.0 : static_cast<double>(o.duplicate_bytes) / static_cast<double>(all);
    return o;
}

MetricsCollector::MetricsCollector(uint32_t node_count) : m_nodes(node_count) {}

const MetricsCollector::PerNode& MetricsCollector::AtNode(uint32_t node) const
{
    if (node >= m_nodes.size()) throw SimError("orphan event for unknown node");
    return m_nodes[node];
}

MetricsCollector::PerNode& MetricsCollector::AtNode(uint32_t node)
{
    if (node >= m_nodes.size()) throw SimError("orphan event for unknown node");
    return m_nodes[node];
}

void MetricsCollector::RecordAdd(uint32_t node, int64_t now_us, const TxId& id)
{
    (void)now_us;
    PerNode& n = AtNode(node);
    if (!n.resident.insert(id).second) {
        throw SimError("audit integrity: duplicate addition of resident orphan " + id.ToHex());
    }
    n.seen.insert(id);
    ++n.total_adds;
}

void MetricsCollector::RecordErase(uint32_t node, int64_t now_us, const TxId& id, RemovalCause cause)
{
    (void)now_us;
    PerNode& n = AtNode(node);
    if (n.resident.erase(id) == 0) {
        throw SimError("audit integrity: erase of non-resident orphan " + id.ToHex());
    }
    ++n.removal_counts[static_cast<size_t>(cause)];
}

} // namespace orphansim
