// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/netsim.hpp>

#include <orphansim/error.hpp>
#include <orphansim/random.hpp>

#include <algorithm>
#include <memory>
#include <queue>
#include <unordered_set>

namespace orphansim {

namespace {

constexpr uint64_t TOPOLOGY_STREAM = 0x544f504f;   // "TOPO"
constexpr uint64_t LATENCY_STREAM = 0x4c415459;    // "LATY"
constexpr uint64_t POLICY_STREAM = 0x504f4c43;     // "POLC"
constexpr uint64_t POOL_STREAM_BASE = 0x504f4f4c00000000ULL; // "POOL" << 32

} // namespace

bool IsConnected(const Topology& topology)
{
    if (topology.node_count == 0) return false;
    std::vector<uint8_t> seen(topology.node_count, 0);
    std::vector<uint16_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        const uint16_t u = stack.back();
        stack.pop_back();
        for (const uint16_t v : topology.adjacency[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == topology.node_count;
}

Topology BuildTopology(uint32_t node_count, double mean_degree, uint64_t seed)
{
    if (node_count < 2) throw ConfigError("topology needs at least 2 nodes");
    if (node_count > 65'000) throw ConfigError("topology supports at most 65000 nodes");
    if (!(mean_degree >= 1.0) || mean_degree > static_cast<double>(node_count - 1)) {
        throw ConfigError("mean_degree must lie in [1, node_count - 1]");
    }

    const double p = mean_degree / static_cast<double>(node_count - 1);
    Rng rng(DeriveSeed(seed, TOPOLOGY_STREAM));

    for (int attempt = 0; attempt < 1000; ++attempt) {
        Topology t;
        t.node_count = node_count;
        t.adjacency.assign(node_count, {});
        for (uint32_t i = 0; i < node_count; ++i) {
            for (uint32_t j = i + 1; j < node_count; ++j) {
                if (rng.NextDouble() < p) {
                    t.edges.emplace_back(static_cast<uint16_t>(i), static_cast<uint16_t>(j));
                    t.adjacency[i].push_back(static_cast<uint16_t>(j));
                    t.adjacency[j].push_back(static_cast<uint16_t>(i));
                }
            }
        }
        if (IsConnected(t)) return t;
    }
    throw SimError("failed to draw a connected topology; raise mean_degree");
}

std::vector<uint32_t> SelectBlockTxs(const TxCatalog& catalog,
                                     std::span<const uint32_t> candidates,
                                     const std::vector<uint8_t>& confirmed,
                                     uint32_t max_block_txs)
{
    struct Candidate {
        double fee_rate;
        uint32_t index;
    };
    std::vector<Candidate> order;
    order.reserve(candidates.size());
    for (const uint32_t index : candidates) {
        if (confirmed[index]) continue;
        const Transaction* tx = catalog.Get(index);
        if (!tx || !tx->standard) continue;
        order.push_back({FeePerByte(*tx), index});
    }
    std::sort(order.begin(), order.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.fee_rate != b.fee_rate) return a.fee_rate > b.fee_rate;
        return catalog.Id(a.index) < catalog.Id(b.index);
    });

    std::vector<uint32_t> selected;
    std::vector<uint8_t> in_block(catalog.Count(), 0);
    std::vector<uint32_t> needed;
    std::vector<uint32_t> stack;

    for (const Candidate& cand : order) {
        if (selected.size() >= max_block_txs) break;
        if (in_block[cand.index]) continue;

        // Pull in the unconfirmed ancestor package.
        needed.clear();
        stack.assign(1, cand.index);
        std::unordered_set<uint32_t> visiting;
        bool feasible = true;
        while (!stack.empty()) {
            const uint32_t u = stack.back();
            stack.pop_back();
            if (confirmed[u] || in_block[u] || visiting.count(u)) continue;
            const Transaction* tx = catalog.Get(u);
            if (!tx || !tx->standard) {
                feasible = false;
                break;
            }
            visiting.insert(u);
            needed.push_back(u);
            for (const uint32_t parent : catalog.ParentIndices(u)) stack.push_back(parent);
        }
        if (!feasible) continue;
        if (selected.size() + needed.size() > max_block_txs) continue;

        // Catalog index order is topological for workload transactions.
        std::sort(needed.begin(), needed.end());
        for (const uint32_t u : needed) {
            in_block[u] = 1;
            selected.push_back(u);
        }
    }
    return selected;
}

namespace {

enum class EvKind : uint8_t {
    INJECT,
    INV,
    GETDATA,
    TX,
    BLOCK,
    BLOCK_GEN,
    CHURN,
    MEM_SAMPLE,
};

struct Event {
    int64_t at_us;
    uint32_t seq;
    EvKind kind;
    uint16_t from;
    uint16_t to;
    uint32_t payload;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const
    {
        if (a.at_us != b.at_us) return a.at_us > b.at_us;
        return a.seq > b.seq;
    }
};

void ValidateSimConfig(const SimConfig& cfg)
{
    if (cfg.node_count < 2) throw ConfigError("node_count must be at least 2");
    if (cfg.node_count > 65'000) throw ConfigError("node_count must be at most 65000");
    if (cfg.block_interval_us <= 0) throw ConfigError("block_interval_s must be positive");
    if (cfg.run_duration_us < 0) throw ConfigError("run_duration_s must be non-negative");
    if (cfg.punishment_us < 0) throw ConfigError("punishment_s must be non-negative");
    if (cfg.memory_sample_interval_us < 0) throw ConfigError("memory_sample_interval_s must be non-negative");
    if (!cfg.pool_sizes_per_node.empty() && cfg.pool_sizes_per_node.size() != cfg.node_count) {
        throw ConfigError("pool_sizes_per_node must list one size per node");
    }
    for (const ChurnEvent& ev : cfg.churn) {
        if (ev.node >= cfg.node_count || ev.peer >= cfg.node_count) {
            throw ConfigError("churn event references an unknown node");
        }
        if (ev.node == ev.peer) throw ConfigError("churn event needs two distinct nodes");
        if (ev.at_us < 0) throw ConfigError("churn event time must be non-negative");
    }
}

class Simulation : public NodeObserver
{
public:
    Simulation(const SimConfig& cfg, const Workload& workload, NodeObserver* extra, RunDebug* debug)
        : m_cfg(cfg),
          m_workload(workload),
          m_extra(extra),
          m_debug(debug),
          m_metrics(cfg.node_count),
          m_latency_rng(DeriveSeed(cfg.seed, LATENCY_STREAM))
    {
    }

    RunReport Run();

    // NodeObserver
    void OnOrphanAdd(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer) override
    {
        m_metrics.RecordAdd(node, now_us, id);
        m_ever_orphaned[node][m_catalog.Find(id)] = 1;
        if (m_extra) m_extra->OnOrphanAdd(node, now_us, id, from_peer);
    }

    void OnOrphanErase(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer,
                       RemovalCause cause) override
    {
        m_metrics.RecordErase(node, now_us, id, cause);
        if (m_extra) m_extra->OnOrphanErase(node, now_us, id, from_peer, cause);
    }

    void OnMissingParents(uint32_t node, int64_t now_us, std::span<const TxId> parents) override
    {
        for (const TxId& parent : parents) {
            const uint32_t index = m_catalog.Find(parent);
            if (!m_missing_seen[node][index]) {
                m_missing_seen[node][index] = 1;
                m_missing_parents[node].push_back(index);
            }
        }
        if (m_extra) m_extra->OnMissingParents(node, now_us, parents);
    }

private:
    void Push(int64_t at_us, EvKind kind, uint16_t from, uint16_t to, uint32_t payload)
    {
        m_queue.push({at_us, m_next_seq++, kind, from, to, payload});
    }

    int64_t SampleLatencyUs()
    {
        // 1 ms floor keeps every hop strictly causal.
        return std::max<int64_t>(1000, SecondsToMicros(m_cfg.latency_dist.Sample(m_latency_rng)));
    }

    int64_t SampleBlockLatencyUs()
    {
        return std::max<int64_t>(1000, SecondsToMicros(m_cfg.block_latency_dist.Sample(m_latency_rng)));
    }

    void FlushOutgoing(uint16_t from, int64_t now_us)
    {
        for (const Outgoing& o : m_scratch) {
            if (o.to == from) continue;
            EvKind kind = EvKind::INV;
            switch (o.kind) {
            case WireKind::INV:
                kind = EvKind::INV;
                ++m_stats[from].inv_sent;
                break;
            case WireKind::GETDATA:
                kind = EvKind::GETDATA;
                ++m_stats[from].getdata_sent;
                break;
            case WireKind::TX:
                kind = EvKind::TX;
                ++m_stats[from].tx_sent;
                break;
            }
            Push(now_us + SampleLatencyUs(), kind, from, o.to, o.tx_index);
        }
        m_scratch.clear();
    }

    bool LinkAlive(uint16_t from, uint16_t to) const { return m_nodes[to]->HasPeer(from); }

    void RecordDelivery(uint16_t node, uint32_t index)
    {
        m_delivered[node][index] = 1;
        if (m_debug) m_debug->deliveries[node].push_back(index);
    }

    void Dispatch(const Event& ev);
    void GenerateBlock(int64_t now_us);
    void ApplyChurn(const ChurnEvent& ev, int64_t now_us);
    void SampleMemory(int64_t now_us);
    RunReport Finalize();

    const SimConfig& m_cfg;
    const Workload& m_workload;
    NodeObserver* m_extra;
    RunDebug* m_debug;

    TxCatalog m_catalog;
    std::vector<std::unique_ptr<Node>> m_nodes;
    MetricsCollector m_metrics;
    Rng m_latency_rng;

    std::priority_queue<Event, std::vector<Event>, EventAfter> m_queue;
    uint32_t m_next_seq{0};
    std::vector<Outgoing> m_scratch;

    uint32_t m_preconfirmed_count{0};

    // Miner state: every injected transaction is visible to one global miner.
    std::vector<uint32_t> m_mine_candidates;
    std::vector<uint8_t> m_confirmed_global;
    std::vector<Block> m_blocks;
    std::vector<int64_t> m_last_block_arrival;
    uint32_t m_next_height{0};

    struct MessageStats {
        uint64_t inv_sent{0}, inv_received{0};
        uint64_t getdata_sent{0}, getdata_received{0};
        uint64_t tx_sent{0}, tx_received{0};
        uint64_t blocks_received{0};
    };
    std::vector<MessageStats> m_stats;

    std::vector<std::vector<uint8_t>> m_ever_orphaned;
    std::vector<std::vector<uint8_t>> m_delivered;
    std::vector<std::vector<uint8_t>> m_missing_seen;
    std::vector<std::vector<uint32_t>> m_missing_parents;
    std::vector<std::vector<MemorySample>> m_memory_series;
};

void Simulation::GenerateBlock(int64_t now_us)
{
    // Drop confirmed candidates before selection to keep the list short.
    m_mine_candidates.erase(
        std::remove_if(m_mine_candidates.begin(), m_mine_candidates.end(),
                       [&](uint32_t index) { return m_confirmed_global[index] != 0; }),
        m_mine_candidates.end());

    Block block;
    block.height = ++m_next_height;
    block.txs = SelectBlockTxs(m_catalog, m_mine_candidates, m_confirmed_global, m_cfg.max_block_txs);
    for (const uint32_t index : block.txs) m_confirmed_global[index] = 1;

    const uint32_t block_index = static_cast<uint32_t>(m_blocks.size());
    m_blocks.push_back(std::move(block));

    // Every node eventually sees every block, in height order per node.
    for (uint32_t node = 0; node < m_cfg.node_count; ++node) {
        int64_t at = now_us + SampleBlockLatencyUs();
        if (at <= m_last_block_arrival[node]) at = m_last_block_arrival[node] + 1;
        m_last_block_arrival[node] = at;
        Push(at, EvKind::BLOCK, static_cast<uint16_t>(node), static_cast<uint16_t>(node), block_index);
    }
}

void Simulation::ApplyChurn(const ChurnEvent& ev, int64_t now_us)
{
    Node& a = *m_nodes[ev.node];
    Node& b = *m_nodes[ev.peer];
    if (ev.disconnect) {
        if (!a.HasPeer(ev.peer)) return;
        a.OnPeerDisconnect(ev.peer, now_us);
        b.OnPeerDisconnect(ev.node, now_us);
    } else {
        if (a.HasPeer(ev.peer)) return;
        a.OnPeerConnect(ev.peer);
        b.OnPeerConnect(ev.node);
    }
}

void Simulation::SampleMemory(int64_t now_us)
{
    for (uint32_t node = 0; node < m_cfg.node_count; ++node) {
        m_memory_series[node].push_back({now_us, m_nodes[node]->Pool().MemoryOverhead(Arch::BITS64)});
    }
}

void Simulation::Dispatch(const Event& ev)
{
    switch (ev.kind) {
    case EvKind::INJECT: {
        const uint32_t windex = ev.payload;
        const uint32_t index = m_preconfirmed_count + windex;
        RecordDelivery(ev.to, index);
        m_nodes[ev.to]->HandleTx(m_workload.txs[windex], ev.to, ev.at_us, m_scratch);
        m_mine_candidates.push_back(index);
        FlushOutgoing(ev.to, ev.at_us);
        return;
    }
    case EvKind::INV: {
        if (!LinkAlive(ev.from, ev.to)) return;
        ++m_stats[ev.to].inv_received;
        m_nodes[ev.to]->HandleInvIndex(ev.payload, ev.from, m_scratch);
        FlushOutgoing(ev.to, ev.at_us);
        return;
    }
    case EvKind::GETDATA: {
        if (!LinkAlive(ev.from, ev.to)) return;
        ++m_stats[ev.to].getdata_received;
        m_nodes[ev.to]->HandleGetDataIndex(ev.payload, ev.from, m_scratch);
        FlushOutgoing(ev.to, ev.at_us);
        return;
    }
    case EvKind::TX: {
        if (!LinkAlive(ev.from, ev.to)) return;
        ++m_stats[ev.to].tx_received;
        const Transaction* tx = m_catalog.Get(ev.payload);
        if (!tx) throw SimError("full transaction delivery without catalog data");
        RecordDelivery(ev.to, ev.payload);
        m_nodes[ev.to]->HandleTx(*tx, ev.from, ev.at_us, m_scratch);
        FlushOutgoing(ev.to, ev.at_us);
        return;
    }
    case EvKind::BLOCK: {
        ++m_stats[ev.to].blocks_received;
        m_nodes[ev.to]->HandleBlock(m_blocks[ev.payload], ev.at_us, m_scratch);
        FlushOutgoing(ev.to, ev.at_us);
        return;
    }
    case EvKind::BLOCK_GEN:
        GenerateBlock(ev.at_us);
        return;
    case EvKind::CHURN:
        ApplyChurn(m_cfg.churn[ev.payload], ev.at_us);
        return;
    case EvKind::MEM_SAMPLE:
        SampleMemory(ev.at_us);
        return;
    }
}

RunReport Simulation::Run()
{
    ValidateSimConfig(m_cfg);
    if (m_workload.txs.empty()) throw ConfigError("workload is empty");
    for (const uint32_t origin : m_workload.origin_nodes) {
        if (origin >= m_cfg.node_count) {
            throw ConfigError("workload origin node " + std::to_string(origin) + " is out of range");
        }
    }

    m_catalog.LoadWorkload(m_workload);
    m_preconfirmed_count = static_cast<uint32_t>(m_workload.preconfirmed.size());
    const size_t slots = m_catalog.Count();

    const Topology topology = BuildTopology(m_cfg.node_count, m_cfg.mean_degree, m_cfg.seed);

    Rng policy_rng(DeriveSeed(m_cfg.seed, POLICY_STREAM));
    m_nodes.reserve(m_cfg.node_count);
    for (uint32_t i = 0; i < m_cfg.node_count; ++i) {
        NodeConfig nc;
        nc.id = static_cast<uint16_t>(i);
        nc.pool = m_cfg.pool;
        if (!m_cfg.pool_sizes_per_node.empty()) nc.pool.max_size = m_cfg.pool_sizes_per_node[i];
        nc.pool.rng_seed = DeriveSeed(m_cfg.seed, POOL_STREAM_BASE + i);
        nc.min_fee_rate = m_cfg.min_fee_rate_dist.Sample(policy_rng);
        nc.punishment_us = m_cfg.punishment_us;
        m_nodes.push_back(std::make_unique<Node>(nc, m_catalog, this));
    }
    for (uint32_t i = 0; i < m_cfg.node_count; ++i) {
        for (const uint16_t peer : topology.adjacency[i]) m_nodes[i]->OnPeerConnect(peer);
    }
    for (uint32_t index = 0; index < m_preconfirmed_count; ++index) {
        for (auto& node : m_nodes) node->SeedConfirmed(index);
    }

    m_confirmed_global.assign(slots, 0);
    for (uint32_t index = 0; index < m_preconfirmed_count; ++index) m_confirmed_global[index] = 1;
    m_last_block_arrival.assign(m_cfg.node_count, -1);
    m_stats.assign(m_cfg.node_count, {});
    m_ever_orphaned.assign(m_cfg.node_count, std::vector<uint8_t>(slots, 0));
    m_delivered.assign(m_cfg.node_count, std::vector<uint8_t>(slots, 0));
    m_missing_seen.assign(m_cfg.node_count, std::vector<uint8_t>(slots, 0));
    m_missing_parents.assign(m_cfg.node_count, {});
    m_memory_series.assign(m_cfg.node_count, {});
    if (m_debug) {
        m_debug->deliveries.assign(m_cfg.node_count, {});
        m_debug->final_states.clear();
        m_debug->catalog_ids.clear();
        m_debug->preconfirmed_count = m_preconfirmed_count;
    }

    for (size_t i = 0; i < m_workload.txs.size(); ++i) {
        Push(m_workload.announce_times_us[i], EvKind::INJECT,
             static_cast<uint16_t>(m_workload.origin_nodes[i]),
             static_cast<uint16_t>(m_workload.origin_nodes[i]), static_cast<uint32_t>(i));
    }
    for (int64_t at = m_cfg.block_interval_us; at <= m_cfg.run_duration_us; at += m_cfg.block_interval_us) {
        Push(at, EvKind::BLOCK_GEN, 0, 0, 0);
    }
    if (m_cfg.memory_sample_interval_us > 0) {
        for (int64_t at = m_cfg.memory_sample_interval_us; at <= m_cfg.run_duration_us;
             at += m_cfg.memory_sample_interval_us) {
            Push(at, EvKind::MEM_SAMPLE, 0, 0, 0);
        }
    }
    for (size_t i = 0; i < m_cfg.churn.size(); ++i) {
        Push(m_cfg.churn[i].at_us, EvKind::CHURN, 0, 0, static_cast<uint32_t>(i));
    }

    while (!m_queue.empty()) {
        const Event ev = m_queue.top();
        if (ev.at_us > m_cfg.run_duration_us) break;
        m_queue.pop();
        Dispatch(ev);
    }

    return Finalize();
}

RunReport Simulation::Finalize()
{
    RunReport report;
    report.seed = m_cfg.seed;
    report.node_count = m_cfg.node_count;
    report.tx_count = m_workload.txs.size();
    report.run_duration_us = m_cfg.run_duration_us;

    const uint32_t first_tx_index = m_preconfirmed_count;
    const size_t tx_count = m_workload.txs.size();

    std::vector<double> pooled_missing_fee;
    std::vector<double> pooled_missing_size;
    std::vector<double> pooled_missing_rate;
    double orphan_rate_sum = 0.0;

    report.nodes.reserve(m_cfg.node_count);
    for (uint32_t n = 0; n < m_cfg.node_count; ++n) {
        NodeStats s;
        s.node = n;
        const Node& node = *m_nodes[n];
        s.pool_max_size = static_cast<uint32_t>(node.Pool().MaxSize());
        s.min_fee_rate = node.MinFeeRate();
        s.removal_counts = m_metrics.RemovalCounts(n);
        s.unique_orphans = m_metrics.UniqueOrphans(n);
        s.total_orphan_additions = m_metrics.TotalAdditions(n);
        s.peak_pool_size = node.Pool().PeakSize();
        s.final_pool_size = node.Pool().Size();
        s.mempool_final = node.MempoolSize();

        uint64_t confirmed = 0;
        uint64_t orphans_confirmed = 0;
        std::vector<double> orphan_parents;
        std::vector<double> non_orphan_parents;
        for (size_t i = 0; i < tx_count; ++i) {
            const uint32_t index = first_tx_index + static_cast<uint32_t>(i);
            const TxState st = node.StateOf(index);
            const bool accepted = st == TxState::IN_MEMPOOL || st == TxState::CONFIRMED;
            if (st == TxState::CONFIRMED) ++confirmed;
            if (m_ever_orphaned[n][index]) {
                orphan_parents.push_back(static_cast<double>(m_workload.txs[i].parents.size()));
                if (st == TxState::CONFIRMED) ++orphans_confirmed;
            } else if (m_delivered[n][index] && accepted) {
                non_orphan_parents.push_back(static_cast<double>(m_workload.txs[i].parents.size()));
            }
        }
        s.confirmed_final = confirmed;
        s.orphans_confirmed_in_blocks = orphans_confirmed;
        s.orphan_parent_count = SummarizeOrZero(orphan_parents);
        s.non_orphan_parent_count = SummarizeOrZero(non_orphan_parents);
        report.orphan_parent_count_samples.insert(report.orphan_parent_count_samples.end(),
                                                  orphan_parents.begin(), orphan_parents.end());
        report.non_orphan_parent_count_samples.insert(report.non_orphan_parent_count_samples.end(),
                                                      non_orphan_parents.begin(), non_orphan_parents.end());

        std::vector<double> missing_fee;
        std::vector<double> missing_size;
        std::vector<double> missing_rate;
        for (const uint32_t index : m_missing_parents[n]) {
            const Transaction* tx = m_catalog.Get(index);
            if (!tx) continue; // pre-confirmed ids carry no payload
            missing_fee.push_back(static_cast<double>(tx->fee_sat));
            missing_size.push_back(static_cast<double>(tx->size_bytes));
            missing_rate.push_back(FeePerByte(*tx));
        }
        s.missing_parent_fee = SummarizeOrZero(missing_fee);
        s.missing_parent_size = SummarizeOrZero(missing_size);
        s.missing_parent_fee_rate = SummarizeOrZero(missing_rate);
        pooled_missing_fee.insert(pooled_missing_fee.end(), missing_fee.begin(), missing_fee.end());
        pooled_missing_size.insert(pooled_missing_size.end(), missing_size.begin(), missing_size.end());
        pooled_missing_rate.insert(pooled_missing_rate.end(), missing_rate.begin(), missing_rate.end());

        s.inv_sent = m_stats[n].inv_sent;
        s.inv_received = m_stats[n].inv_received;
        s.getdata_sent = m_stats[n].getdata_sent;
        s.getdata_received = m_stats[n].getdata_received;
        s.tx_sent = m_stats[n].tx_sent;
        s.tx_received = m_stats[n].tx_received;
        s.blocks_received = m_stats[n].blocks_received;
        s.memory_series = std::move(m_memory_series[n]);

        for (size_t c = 0; c < REMOVAL_CAUSE_COUNT; ++c) report.removal_counts[c] += s.removal_counts[c];
        report.unique_orphans += s.unique_orphans;
        report.total_orphan_additions += s.total_orphan_additions;
        orphan_rate_sum += static_cast<double>(s.unique_orphans) / static_cast<double>(tx_count);

        report.nodes.push_back(std::move(s));
    }
    report.orphan_rate = orphan_rate_sum / static_cast<double>(m_cfg.node_count);

    std::vector<double> fee;
    std::vector<double> size;
    std::vector<double> rate;
    std::vector<double> parents;
    fee.reserve(tx_count);
    size.reserve(tx_count);
    rate.reserve(tx_count);
    parents.reserve(tx_count);
    for (const Transaction& tx : m_workload.txs) {
        fee.push_back(static_cast<double>(tx.fee_sat));
        size.push_back(static_cast<double>(tx.size_bytes));
        rate.push_back(FeePerByte(tx));
        parents.push_back(static_cast<double>(tx.parents.size()));
    }
    report.all_tx_fee = Summarize(fee);
    report.all_tx_size = Summarize(size);
    report.all_tx_fee_rate = Summarize(rate);
    report.all_tx_parent_count = Summarize(parents);
    report.missing_parent_fee = SummarizeOrZero(pooled_missing_fee);
    report.missing_parent_size = SummarizeOrZero(pooled_missing_size);
    report.missing_parent_fee_rate = SummarizeOrZero(pooled_missing_rate);
    report.missing_parent_size_samples = std::move(pooled_missing_size);
    report.missing_parent_fee_rate_samples = std::move(pooled_missing_rate);

    if (m_debug) {
        m_debug->final_states.reserve(m_cfg.node_count);
        for (uint32_t n = 0; n < m_cfg.node_count; ++n) {
            std::vector<TxState> states(m_catalog.Count());
            for (uint32_t i = 0; i < m_catalog.Count(); ++i) states[i] = m_nodes[n]->StateOf(i);
            m_debug->final_states.push_back(std::move(states));
        }
        m_debug->catalog_ids.reserve(m_catalog.Count());
        for (uint32_t i = 0; i < m_catalog.Count(); ++i) m_debug->catalog_ids.push_back(m_catalog.Id(i));
    }
    return report;
}

} // namespace

RunReport RunSimulation(const SimConfig& cfg, const Workload& workload,
                        NodeObserver* extra_observer, RunDebug* debug)
{
    Simulation sim(cfg, workload, extra_observer, debug);
    return sim.Run();
}

} // namespace orphansim
