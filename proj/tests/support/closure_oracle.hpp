// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_TESTS_CLOSURE_ORACLE_HPP
#define ORPHANSIM_TESTS_CLOSURE_ORACLE_HPP

#include <orphansim/netsim.hpp>
#include <orphansim/workload.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace orphansim::test {

//! Parent indices for every catalog slot, rebuilt from the workload alone so
//! the oracle shares no data structures with the simulator.
inline std::vector<std::vector<uint32_t>> ParentIndicesFromWorkload(const Workload& workload,
                                                                    const RunDebug& debug)
{
    std::map<TxId, uint32_t> index;
    for (uint32_t i = 0; i < debug.catalog_ids.size(); ++i) index.emplace(debug.catalog_ids[i], i);
    std::vector<std::vector<uint32_t>> parents(debug.catalog_ids.size());
    for (size_t i = 0; i < workload.txs.size(); ++i) {
        const uint32_t self = debug.preconfirmed_count + static_cast<uint32_t>(i);
        for (const TxId& p : workload.txs[i].parents) parents[self].push_back(index.at(p));
    }
    return parents;
}

//! Fixpoint over one node's delivery log: a delivered transaction is
//! acceptable once every parent is preconfirmed or itself acceptable. This
//! is what a policy-free node must converge to with unbounded pools and no
//! expiry, regardless of arrival order.
inline std::set<uint32_t> TopologicalClosure(std::span<const uint32_t> deliveries,
                                             uint32_t preconfirmed_count,
                                             const std::vector<std::vector<uint32_t>>& parents)
{
    const std::set<uint32_t> delivered(deliveries.begin(), deliveries.end());
    std::set<uint32_t> accepted;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const uint32_t d : delivered) {
            if (accepted.count(d)) continue;
            bool ready = true;
            for (const uint32_t p : parents[d]) {
                if (p >= preconfirmed_count && !accepted.count(p)) {
                    ready = false;
                    break;
                }
            }
            if (ready) {
                accepted.insert(d);
                changed = true;
            }
        }
    }
    return accepted;
}

//! Final accepted set (mempool or confirmed) of one node over workload slots.
inline std::set<uint32_t> AcceptedSet(const RunDebug& debug, uint32_t node)
{
    std::set<uint32_t> out;
    const std::vector<TxState>& states = debug.final_states[node];
    for (uint32_t i = debug.preconfirmed_count; i < states.size(); ++i) {
        if (states[i] == TxState::IN_MEMPOOL || states[i] == TxState::CONFIRMED) out.insert(i);
    }
    return out;
}

} // namespace orphansim::test

#endif // ORPHANSIM_TESTS_CLOSURE_ORACLE_HPP
