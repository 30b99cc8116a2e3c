// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/orphan_pool.hpp>

#include <orphansim/error.hpp>

#include <cassert>

namespace orphansim {

const char* RemovalCauseName(RemovalCause cause)
{
    switch (cause) {
    case RemovalCause::PARENTS_RECEIVED: return "parents_received";
    case RemovalCause::PARENTS_IN_BLOCK: return "parents_in_block";
    case RemovalCause::POOL_FULL: return "pool_full";
    case RemovalCause::TIMEOUT: return "timeout";
    case RemovalCause::INVALID: return "invalid";
    case RemovalCause::PEER_DISCONNECTED: return "peer_disconnected";
    }
    return "unknown";
}

bool RemovalCauseFromName(const std::string& name, RemovalCause& out)
{
    for (size_t i = 0; i < REMOVAL_CAUSE_COUNT; ++i) {
        const auto cause = static_cast<RemovalCause>(i);
        if (name == RemovalCauseName(cause)) {
            out = cause;
            return true;
        }
    }
    return false;
}

OrphanPool::OrphanPool(const Options& options, Listener* listener)
    : m_options(options), m_listener(listener), m_rng(options.rng_seed)
{
    if (m_options.max_size == 0) throw ConfigError("orphan pool max_size must be at least 1");
    if (m_options.expiry_us <= 0) throw ConfigError("orphan pool expiry must be positive");
    if (m_options.sweep_interval_us <= 0) throw ConfigError("orphan pool sweep interval must be positive");
    if (m_options.max_orphan_size_bytes == 0) throw ConfigError("max_orphan_size_bytes must be at least 1");
}

AddResult OrphanPool::AddOrphan(const Transaction& tx, uint16_t from_peer, int64_t now_us)
{
    if (m_entries.count(tx.id)) return AddResult::ALREADY_PRESENT;
    if (tx.size_bytes > m_options.max_orphan_size_bytes) return AddResult::TOO_LARGE;

    ExpireOrphans(now_us);

    OrphanEntry entry;
    entry.tx = tx;
    entry.from_peer = from_peer;
    entry.expires_at_us = now_us + m_options.expiry_us;
    entry.list_pos = m_eviction_list.size();
    m_eviction_list.push_back(tx.id);
    for (const TxId& parent : tx.parents) {
        m_parent_links[parent].insert(tx.id);
    }
    m_entries.emplace(tx.id, std::move(entry));

    ++m_total_adds;
    if (m_entries.size() > m_peak_size) m_peak_size = m_entries.size();
    if (m_listener) m_listener->OrphanAdded(now_us, tx.id, from_peer);

    LimitOrphans(now_us);
    return AddResult::ADDED;
}

void OrphanPool::Erase(std::unordered_map<TxId, OrphanEntry, TxIdHasher>::iterator it,
                       RemovalCause cause, int64_t now_us)
{
    const OrphanEntry& entry = it->second;

    // Swap-remove from the eviction list, fixing up the moved entry's slot.
    const size_t pos = entry.list_pos;
    const TxId last = m_eviction_list.back();
    if (last != it->first) {
        m_eviction_list[pos] = last;
        m_entries.at(last).list_pos = pos;
    }
    m_eviction_list.pop_back();

    for (const TxId& parent : entry.tx.parents) {
        const auto link = m_parent_links.find(parent);
        if (link == m_parent_links.end()) continue;
        link->second.erase(it->first);
        if (link->second.empty()) m_parent_links.erase(link);
    }

    ++m_removal_counts[static_cast<size_t>(cause)];
    const TxId id = it->first;
    const uint16_t from_peer = entry.from_peer;
    m_entries.erase(it);
    if (m_listener) m_listener->OrphanErased(now_us, id, from_peer, cause);
}

bool OrphanPool::EraseOrphan(const TxId& id, RemovalCause cause, int64_t now_us)
{
    const auto it = m_entries.find(id);
    if (it == m_entries.end()) return false;
    Erase(it, cause, now_us);
    return true;
}

size_t OrphanPool::LimitOrphans(int64_t now_us)
{
    size_t evicted = 0;
    while (m_entries.size() > m_options.max_size) {
        const size_t victim = static_cast<size_t>(m_rng.RandRange(m_eviction_list.size()));
        Erase(m_entries.find(m_eviction_list[victim]), RemovalCause::POOL_FULL, now_us);
        ++evicted;
    }
    return evicted;
}

std::vector<TxId> OrphanPool::ExpireOrphans(int64_t now_us)
{
    std::vector<TxId> erased;
    if (now_us < m_next_sweep_at_us) return erased;

    for (const TxId& id : m_eviction_list) {
        if (m_entries.at(id).expires_at_us <= now_us) erased.push_back(id);
    }
    for (const TxId& id : erased) {
        Erase(m_entries.find(id), RemovalCause::TIMEOUT, now_us);
    }
    m_next_sweep_at_us = now_us + m_options.sweep_interval_us;
    return erased;
}

size_t OrphanPool::EraseForPeer(uint16_t peer, int64_t now_us)
{
    std::vector<TxId> doomed;
    for (const TxId& id : m_eviction_list) {
        if (m_entries.at(id).from_peer == peer) doomed.push_back(id);
    }
    for (const TxId& id : doomed) {
        Erase(m_entries.find(id), RemovalCause::PEER_DISCONNECTED, now_us);
    }
    return doomed.size();
}

std::set<TxId> OrphanPool::OrphansSpending(const TxId& parent) const
{
    const auto it = m_parent_links.find(parent);
    if (it == m_parent_links.end()) return {};
    return it->second;
}

OverheadBreakdown OrphanPool::MemoryOverhead(Arch arch) const
{
    const uint64_t entry_cost = arch == Arch::BITS64 ? 72 : 60;
    const uint64_t pointer_cost = arch == Arch::BITS64 ? 8 : 4;

    OverheadBreakdown breakdown;
    breakdown.entry_bytes = entry_cost * m_entries.size();
    for (const auto& [parent, spenders] : m_parent_links) {
        breakdown.parent_link_bytes += 36 + pointer_cost * spenders.size();
    }
    breakdown.eviction_list_bytes = pointer_cost * m_eviction_list.size();
    return breakdown;
}

const OrphanEntry* OrphanPool::Get(const TxId& id) const
{
    const auto it = m_entries.find(id);
    return it == m_entries.end() ? nullptr : &it->second;
}

uint64_t OrphanPool::TotalRemovals() const
{
    uint64_t total = 0;
    for (const uint64_t count : m_removal_counts) total += count;
    return total;
}

} // namespace orphansim
