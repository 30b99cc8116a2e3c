// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_WORKLOAD_HPP
#define ORPHANSIM_WORKLOAD_HPP

#include <orphansim/distribution.hpp>
#include <orphansim/transaction.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace orphansim {

class Rng;

/**
 * Parent count model: a one-inflated geometric. With probability
 * one_fraction the count is exactly 1; otherwise it is 2 plus a geometric
 * tail tuned so the overall mean comes out at `mean`. This keeps both knobs
 * from the measured traffic shape: the average parent count and the share
 * of transactions with more than one parent (1 - one_fraction).
 *
 * mean <= 1 or one_fraction == 1 degenerates to "always one parent".
 */
struct ParentCountSpec {
    double mean{2.2};
    double one_fraction{0.75};
};

uint32_t SampleParentCount(const ParentCountSpec& spec, Rng& rng);

struct WorkloadConfig {
    uint64_t tx_count{100000};
    ParentCountSpec parent_count;
    DistSpec fee_rate_dist{DistSpec::LogNormalMeanStd(21.73, 47.13)};   // sat per byte
    DistSpec size_dist{DistSpec::LogNormalMeanStd(480.31, 2120.40)};    // bytes
    uint32_t size_min_bytes{MIN_TX_SIZE_BYTES};
    uint32_t size_max_bytes{240'208};
    double nonstandard_fraction{0.002};
    //! Gaussian-copula correlation between the fee-rate and size draws when
    //! both are log-normal. Negative values make large transactions cheap per
    //! byte, which is what measured traffic shows. 0 disables the coupling.
    double feerate_size_correlation{-0.12};
    //! Parents are drawn uniformly from the most recent `parent_window`
    //! already-generated ids (seeded with `preconfirmed_count` synthetic
    //! pre-confirmed ancestors for the earliest transactions).
    uint32_t parent_window{8000};
    uint32_t preconfirmed_count{64};
    //! Poisson announcement process rate, transactions per second.
    double inject_rate_tps{40.0};
    uint64_t seed{1};
};

/**
 * A generated or imported traffic trace. Transactions are stored in
 * topological order, which is also announcement order; announce times are
 * globally non-decreasing. `preconfirmed` holds synthetic ancestor ids that
 * every node treats as confirmed from the start.
 */
struct Workload {
    std::vector<Transaction> txs;
    std::vector<int64_t> announce_times_us;
    std::vector<uint32_t> origin_nodes;
    std::vector<TxId> preconfirmed;

    size_t Size() const { return txs.size(); }
};

/**
 * Draw one transaction. The draw order (parent count, parent picks, fee-rate
 * deviate, size deviate, standard flag, id) is fixed; changing it would
 * silently break replay determinism. `available_parents` must be non-empty.
 */
Transaction SampleTransaction(const WorkloadConfig& cfg, std::span<const TxId> available_parents, Rng& rng);

//! Generate a full trace. Pure function of (cfg, node_count).
Workload BuildWorkload(const WorkloadConfig& cfg, uint32_t node_count);

//! One transaction per line:
//! {"id","size_bytes","fee_sat","parents","standard","announce_time_s","origin_node"}
void WriteWorkloadJsonl(const Workload& workload, std::ostream& out);
void WriteWorkloadJsonlFile(const Workload& workload, const std::string& path);

//! Inverse of WriteWorkloadJsonl. Parent ids never defined in the file are
//! collected (sorted, deduplicated) as the pre-confirmed set. Validates
//! field names, topological order, sizes and per-origin announce ordering.
Workload ReadWorkloadJsonl(std::istream& in);
Workload ReadWorkloadJsonlFile(const std::string& path);

} // namespace orphansim

#endif // ORPHANSIM_WORKLOAD_HPP
