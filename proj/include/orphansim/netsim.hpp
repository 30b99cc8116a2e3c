// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_NETSIM_HPP
#define ORPHANSIM_NETSIM_HPP

#include <orphansim/distribution.hpp>
#include <orphansim/metrics.hpp>
#include <orphansim/node.hpp>
#include <orphansim/workload.hpp>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace orphansim {

struct Topology {
    uint32_t node_count{0};
    std::vector<std::pair<uint16_t, uint16_t>> edges;        //!< i < j
    std::vector<std::vector<uint16_t>> adjacency;            //!< sorted per node

    double MeanDegree() const
    {
        return node_count == 0 ? 0.0 : 2.0 * static_cast<double>(edges.size()) / node_count;
    }
};

bool IsConnected(const Topology& topology);

/**
 * Erdos-Renyi graph with edge probability mean_degree / (node_count - 1),
 * re-drawn (bounded retries) until connected. Deterministic in
 * (node_count, mean_degree, seed).
 */
Topology BuildTopology(uint32_t node_count, double mean_degree, uint64_t seed);

/**
 * Greedy ancestor-package block template: candidates are walked in
 * fee-per-byte descending order (ties by txid), and each is included
 * together with its unconfirmed ancestors when the whole package fits and
 * contains no non-standard transaction. Returns catalog indices in an order
 * where every parent precedes its spender.
 */
std::vector<uint32_t> SelectBlockTxs(const TxCatalog& catalog,
                                     std::span<const uint32_t> candidates,
                                     const std::vector<uint8_t>& confirmed,
                                     uint32_t max_block_txs);

struct ChurnEvent {
    int64_t at_us{0};
    uint16_t node{0};
    uint16_t peer{0};
    bool disconnect{true};
};

struct SimConfig {
    uint32_t node_count{50};
    double mean_degree{8.0};
    DistSpec latency_dist{DistSpec::Uniform(0.05, 0.5)}; //!< seconds per message
    //! Blocks relay over a dedicated fast path, so their delivery latency is
    //! sampled separately from loose-transaction latency.
    DistSpec block_latency_dist{DistSpec::LogNormalMeanStd(5.0, 3.0)}; //!< seconds per block
    int64_t block_interval_us{SecondsToMicros(int64_t{600})};
    uint32_t max_block_txs{25'000};
    DistSpec min_fee_rate_dist{DistSpec::Constant(1.0)}; //!< per-node policy draw
    OrphanPool::Options pool;
    std::vector<uint32_t> pool_sizes_per_node; //!< optional per-node cap override
    int64_t punishment_us{SecondsToMicros(int64_t{60})};
    std::vector<ChurnEvent> churn;
    int64_t run_duration_us{SecondsToMicros(int64_t{4800})};
    int64_t memory_sample_interval_us{SecondsToMicros(int64_t{60})}; //!< 0 disables
    uint64_t seed{1};
};

//! Optional introspection output for closure checks in tests: everything a
//! node ever received in full (injections included), and final states, both
//! keyed by catalog index.
struct RunDebug {
    std::vector<std::vector<uint32_t>> deliveries;
    std::vector<std::vector<TxState>> final_states;
    std::vector<TxId> catalog_ids;
    uint32_t preconfirmed_count{0};
};

/**
 * Execute one run: inject the workload at its announce times, relay via
 * inv/getdata/tx flooding over the generated topology, mine blocks from an
 * omniscient miner on a fixed interval, apply churn, and collect metrics.
 * Deterministic: two calls with equal inputs produce identical reports and
 * identical observer event sequences.
 */
RunReport RunSimulation(const SimConfig& cfg, const Workload& workload,
                        NodeObserver* extra_observer = nullptr, RunDebug* debug = nullptr);

} // namespace orphansim

#endif // ORPHANSIM_NETSIM_HPP
