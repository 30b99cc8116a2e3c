// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_ORPHAN_POOL_HPP
#define ORPHANSIM_ORPHAN_POOL_HPP

#include <orphansim/random.hpp>
#include <orphansim/time_units.hpp>
#include <orphansim/transaction.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace orphansim {

//! Why an entry left the pool. Every erase is tagged with exactly one cause.
enum class RemovalCause : uint8_t {
    PARENTS_RECEIVED = 0,  //!< all missing parents arrived, orphan accepted
    PARENTS_IN_BLOCK = 1,  //!< the orphan itself was confirmed in a block
    POOL_FULL = 2,         //!< random eviction at the size cap
    TIMEOUT = 3,           //!< resident past the expiry interval
    INVALID = 4,           //!< failed validation once its parents arrived
    PEER_DISCONNECTED = 5, //!< the announcing peer went away
};

inline constexpr size_t REMOVAL_CAUSE_COUNT = 6;

const char* RemovalCauseName(RemovalCause cause);
//! Inverse of RemovalCauseName; returns false on unknown names.
bool RemovalCauseFromName(const std::string& name, RemovalCause& out);

enum class AddResult : uint8_t {
    ADDED,
    ALREADY_PRESENT,
    TOO_LARGE,
};

//! Pointer width assumed by the in-memory footprint model.
enum class Arch : uint8_t {
    BITS64,
    BITS32,
};

struct OverheadBreakdown {
    uint64_t entry_bytes{0};
    uint64_t parent_link_bytes{0};
    uint64_t eviction_list_bytes{0};

    uint64_t TotalBytes() const { return entry_bytes + parent_link_bytes + eviction_list_bytes; }
};

struct OrphanEntry {
    Transaction tx;
    uint16_t from_peer{0};
    int64_t expires_at_us{0};
    size_t list_pos{0}; //!< index into the eviction list
};

/**
 * Bounded pool of transactions whose parents have not been seen yet.
 *
 * Structure mirrors the reference client: a map from txid to entry, a
 * reverse map from each (distinct) parent txid to the set of resident
 * orphans spending it, and a flat eviction list enabling uniform random
 * eviction in O(1) via swap-remove. Expiry is lazy: sweeps run at most once
 * per sweep interval, triggered from AddOrphan or an explicit call.
 */
class OrphanPool
{
public:
    struct Options {
        size_t max_size{100};
        int64_t expiry_us{MinutesToMicros(20)};
        int64_t sweep_interval_us{MinutesToMicros(5)};
        uint32_t max_orphan_size_bytes{100'000};
        uint64_t rng_seed{0};
    };

    //! Observer for every pool mutation; drives audit logs and metrics.
    class Listener
    {
    public:
        virtual ~Listener() = default;
        virtual void OrphanAdded(int64_t now_us, const TxId& id, uint16_t from_peer) = 0;
        virtual void OrphanErased(int64_t now_us, const TxId& id, uint16_t from_peer, RemovalCause cause) = 0;
    };

    explicit OrphanPool(const Options& options, Listener* listener = nullptr);

    /**
     * Admit an orphan. Oversized transactions are rejected, duplicates are
     * ignored. On admission an expiry sweep runs first (if due), then the
     * entry is inserted, then the size cap is enforced; the newly added
     * entry itself may be the eviction victim.
     */
    AddResult AddOrphan(const Transaction& tx, uint16_t from_peer, int64_t now_us);

    //! Erase one entry, tagging the given cause. Returns false if absent.
    bool EraseOrphan(const TxId& id, RemovalCause cause, int64_t now_us);

    //! Evict uniformly random entries until size <= max_size. Returns the
    //! number evicted.
    size_t LimitOrphans(int64_t now_us);

    //! Lazy expiry sweep. No-op before next_sweep_at; otherwise erases every
    //! entry with expires_at <= now and schedules the next sweep. Returns the
    //! erased ids in eviction-list order.
    std::vector<TxId> ExpireOrphans(int64_t now_us);

    //! Drop everything announced by `peer`. Returns the number erased.
    size_t EraseForPeer(uint16_t peer, int64_t now_us);

    //! Resident orphans listing `parent` among their missing parents.
    std::set<TxId> OrphansSpending(const TxId& parent) const;

    /**
     * Bookkeeping bytes attributable to orphan tracking, following the
     * reference client's containers: a fixed-cost map entry per orphan, a
     * parent-link bucket of 36 + N*sizeof(pointer) bytes per distinct parent
     * key with N spending orphans, and one pointer per eviction slot.
     */
    OverheadBreakdown MemoryOverhead(Arch arch) const;

    bool Contains(const TxId& id) const { return m_entries.count(id) != 0; }
    const OrphanEntry* Get(const TxId& id) const;
    size_t Size() const { return m_entries.size(); }
    size_t MaxSize() const { return m_options.max_size; }
    size_t PeakSize() const { return m_peak_size; }
    int64_t NextSweepAtUs() const { return m_next_sweep_at_us; }

    uint64_t TotalAdds() const { return m_total_adds; }
    const std::array<uint64_t, REMOVAL_CAUSE_COUNT>& RemovalCounts() const { return m_removal_counts; }
    uint64_t TotalRemovals() const;

    // Introspection used by consistency checks and tests.
    const std::unordered_map<TxId, OrphanEntry, TxIdHasher>& Entries() const { return m_entries; }
    const std::unordered_map<TxId, std::set<TxId>, TxIdHasher>& ParentLinks() const { return m_parent_links; }
    const std::vector<TxId>& EvictionList() const { return m_eviction_list; }

private:
    void Erase(std::unordered_map<TxId, OrphanEntry, TxIdHasher>::iterator it, RemovalCause cause, int64_t now_us);

    Options m_options;
    Listener* m_listener;
    Rng m_rng;

    std::unordered_map<TxId, OrphanEntry, TxIdHasher> m_entries;
    std::unordered_map<TxId, std::set<TxId>, TxIdHasher> m_parent_links;
    std::vector<TxId> m_eviction_list;
    int64_t m_next_sweep_at_us{0};

    size_t m_peak_size{0};
    uint64_t m_total_adds{0};
    std::array<uint64_t, REMOVAL_CAUSE_COUNT> m_removal_counts{};
};

} // namespace orphansim

#endif // ORPHANSIM_ORPHAN_POOL_HPP
