// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_TESTS_POOL_MODEL_HPP
#define ORPHANSIM_TESTS_POOL_MODEL_HPP

#include <orphansim/orphan_pool.hpp>
#include <orphansim/random.hpp>
#include <orphansim/txid.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orphansim::test {

/**
 * Drives an OrphanPool with a random operation mix while mirroring it in a
 * deliberately naive reference model, and cross-checks both after every
 * operation:
 *
 *  - the entry map, eviction list and parent links are reconstructed from
 *    scratch and compared against the pool's maintained structures;
 *  - expiry, peer-purge and erase outcomes are predicted from the reference
 *    state (timestamp and from_peer filters) before each call;
 *  - random evictions are unpredictable by design, so they are validated
 *    structurally: exact count, cause, and prior residency of each victim;
 *  - listener events must agree one-to-one with the state transitions.
 *
 * Any violation throws std::runtime_error naming the operation index.
 */
class PoolModelHarness : private OrphanPool::Listener
{
public:
    struct Config {
        OrphanPool::Options pool;
        uint64_t ops{10000};
        uint64_t seed{1};
        //! Deep structural comparison every N ops (1 = every op).
        uint64_t deep_check_every{1};
    };

    struct Stats {
        uint64_t adds{0};
        uint64_t already_present{0};
        uint64_t too_large{0};
        uint64_t expiries{0};
        uint64_t pool_full{0};
        uint64_t peer_purges{0};
        uint64_t explicit_erases{0};
        uint64_t deep_checks{0};
    };

    explicit PoolModelHarness(const Config& cfg)
        : m_cfg(cfg), m_pool(cfg.pool, this), m_rng(DeriveSeed(cfg.seed, 0x4d4f444cULL)) // "MODL"
    {
        // A small id universe forces parent sharing and id reuse.
        for (int i = 0; i < 40; ++i) m_parent_universe.push_back(RandomTxId(m_rng));
    }

    Stats Run()
    {
        for (uint64_t op = 0; op < m_cfg.ops; ++op) {
            m_op = op;
            m_now += static_cast<int64_t>(m_rng.RandRange(90 * 1'000'000ULL));
            const uint64_t pick = m_rng.RandRange(100);
            if (pick < 55) {
                DoAdd();
            } else if (pick < 65) {
                DoEraseKnown();
            } else if (pick < 72) {
                DoEraseAbsent();
            } else if (pick < 84) {
                DoExpire();
            } else if (pick < 92) {
                DoEraseForPeer();
            } else if (pick < 96) {
                DoDirectLimit();
            } else {
                CheckMemoryModel();
            }
            if (op % m_cfg.deep_check_every == 0) {
                DeepCheck();
                ++m_stats.deep_checks;
            }
            CheckCounters();
        }
        DeepCheck();
        return m_stats;
    }

private:
    struct RefEntry {
        std::vector<TxId> parents;
        uint16_t from_peer{0};
        int64_t expires_at_us{0};
    };

    struct Event {
        bool added{false};
        TxId id;
        uint16_t from_peer{0};
        RemovalCause cause{RemovalCause::PARENTS_RECEIVED};
        int64_t at_us{0};
    };

    [[noreturn]] void Fail(const std::string& what) const
    {
        std::ostringstream os;
        os << "pool model violation at op " << m_op << ": " << what;
        throw std::runtime_error(os.str());
    }

    // ---- listener: the only channel through which the reference mutates ----

    void OrphanAdded(int64_t now_us, const TxId& id, uint16_t from_peer) override
    {
        if (m_ref.count(id)) Fail("add event for an already resident orphan " + id.ToHex());
        if (!m_pending_add || m_pending_add->id != id) Fail("unexpected add event");
        RefEntry entry;
        entry.parents = m_pending_add->parents;
        entry.from_peer = from_peer;
        entry.expires_at_us = now_us + m_cfg.pool.expiry_us;
        m_ref.emplace(id, std::move(entry));
        m_events.push_back({true, id, from_peer, RemovalCause::PARENTS_RECEIVED, now_us});
    }

    void OrphanErased(int64_t now_us, const TxId& id, uint16_t from_peer, RemovalCause cause) override
    {
        const auto it = m_ref.find(id);
        if (it == m_ref.end()) Fail("erase event for non-resident orphan " + id.ToHex());
        if (it->second.from_peer != from_peer) Fail("erase event reports the wrong announcing peer");
        switch (cause) {
        case RemovalCause::TIMEOUT:
            if (it->second.expires_at_us > now_us) Fail("timeout erase before the entry expired");
            break;
        case RemovalCause::PEER_DISCONNECTED:
            if (!m_purge_context || from_peer != *m_purge_context) {
                Fail("peer-disconnect erase outside a purge");
            }
            break;
        case RemovalCause::POOL_FULL:
            if (!m_add_context) Fail("random eviction outside an add");
            break;
        default:
            if (!m_erase_context || *m_erase_context != cause) Fail("unexpected explicit erase cause");
            break;
        }
        m_ref.erase(it);
        m_events.push_back({false, id, from_peer, cause, now_us});
    }

    // ---- operations with predictions ----

    //! Entries the next open-gate sweep at `now` would erase, in the pool's
    //! current eviction-list order.
    std::vector<TxId> PredictExpiry(int64_t now_us) const
    {
        std::vector<TxId> out;
        if (now_us < m_expected_next_sweep_us) return out;
        for (const TxId& id : m_pool.EvictionList()) {
            const auto it = m_ref.find(id);
            if (it == m_ref.end()) Fail("eviction list mentions an id the reference lacks");
            if (it->second.expires_at_us <= now_us) out.push_back(id);
        }
        return out;
    }

    std::vector<Event> TakeEvents() { return std::exchange(m_events, {}); }

    Transaction MakeTx(bool oversized)
    {
        Transaction tx;
        // 20% reuse of a previously seen id: hits duplicate and re-add paths.
        if (!m_seen_ids.empty() && m_rng.RandRange(5) == 0) {
            tx.id = m_seen_ids[m_rng.RandRange(m_seen_ids.size())];
        } else {
            tx.id = RandomTxId(m_rng);
            m_seen_ids.push_back(tx.id);
        }
        tx.size_bytes = oversized ? m_cfg.pool.max_orphan_size_bytes + 1 +
                                        static_cast<uint32_t>(m_rng.RandRange(1000))
                                  : 85 + static_cast<uint32_t>(m_rng.RandRange(
                                             m_cfg.pool.max_orphan_size_bytes - 85));
        tx.fee_sat = m_rng.RandRange(100000);
        const size_t parent_count = 1 + m_rng.RandRange(4);
        for (size_t i = 0; i < parent_count; ++i) {
            // Mostly shared universe ids; duplicates within one list allowed.
            if (m_rng.RandRange(10) == 0) {
                tx.parents.push_back(RandomTxId(m_rng));
            } else {
                tx.parents.push_back(m_parent_universe[m_rng.RandRange(m_parent_universe.size())]);
            }
        }
        return tx;
    }

    void DoAdd()
    {
        const bool oversized = m_rng.RandRange(12) == 0;
        const Transaction tx = MakeTx(oversized);
        const uint16_t peer = static_cast<uint16_t>(m_rng.RandRange(6));

        const bool resident_before = m_ref.count(tx.id) != 0;
        const std::vector<TxId> expected_expired =
            resident_before || oversized ? std::vector<TxId>{} : PredictExpiry(m_now);

        m_pending_add = tx;
        m_add_context = true;
        const AddResult result = m_pool.AddOrphan(tx, peer, m_now);
        m_add_context = false;
        m_pending_add.reset();
        const std::vector<Event> events = TakeEvents();

        if (resident_before) {
            if (result != AddResult::ALREADY_PRESENT) Fail("duplicate add not reported as already present");
            if (!events.empty()) Fail("already-present add mutated the pool");
            ++m_stats.already_present;
            return;
        }
        if (oversized) {
            if (result != AddResult::TOO_LARGE) Fail("oversized add not rejected");
            if (!events.empty()) Fail("too-large add mutated the pool");
            ++m_stats.too_large;
            return;
        }
        if (result != AddResult::ADDED) Fail("fresh add rejected");
        ++m_stats.adds;
        // The admission path always attempts a sweep, so an open gate renews
        // the schedule even when nothing expires.
        if (m_now >= m_expected_next_sweep_us) m_expected_next_sweep_us = m_now + m_cfg.pool.sweep_interval_us;

        // Event shape: the predicted expiries (in order), then the add,
        // then zero or more random evictions restoring the cap.
        size_t i = 0;
        for (; i < expected_expired.size(); ++i) {
            if (i >= events.size() || events[i].added || events[i].cause != RemovalCause::TIMEOUT ||
                events[i].id != expected_expired[i]) {
                Fail("expiry-during-add events do not match the timestamp oracle");
            }
        }
        m_stats.expiries += expected_expired.size();
        if (i >= events.size() || !events[i].added || events[i].id != tx.id) {
            Fail("add event missing or out of order");
        }
        ++i;
        for (; i < events.size(); ++i) {
            if (events[i].added || events[i].cause != RemovalCause::POOL_FULL) {
                Fail("unexpected trailing event after add");
            }
            ++m_stats.pool_full;
        }
        if (m_ref.size() > m_cfg.pool.max_size) Fail("cap exceeded after add");
    }

    void DoEraseKnown()
    {
        if (m_ref.empty()) return;
        // Pick a pseudo-random resident via the pool's own list (public API).
        const TxId id = m_pool.EvictionList()[m_rng.RandRange(m_pool.EvictionList().size())];
        static constexpr RemovalCause CAUSES[] = {
            RemovalCause::PARENTS_RECEIVED, RemovalCause::PARENTS_IN_BLOCK, RemovalCause::INVALID};
        const RemovalCause cause = CAUSES[m_rng.RandRange(3)];
        m_erase_context = cause;
        const bool erased = m_pool.EraseOrphan(id, cause, m_now);
        m_erase_context.reset();
        const std::vector<Event> events = TakeEvents();
        if (!erased) Fail("resident erase returned false");
        if (events.size() != 1 || events[0].added || events[0].id != id) {
            Fail("resident erase produced the wrong event");
        }
        ++m_stats.explicit_erases;
    }

    void DoEraseAbsent()
    {
        TxId id = RandomTxId(m_rng);
        while (m_ref.count(id)) id = RandomTxId(m_rng);
        m_erase_context = RemovalCause::PARENTS_RECEIVED;
        const bool erased = m_pool.EraseOrphan(id, RemovalCause::PARENTS_RECEIVED, m_now);
        m_erase_context.reset();
        if (erased) Fail("absent erase returned true");
        if (!TakeEvents().empty()) Fail("absent erase mutated the pool");
    }

    void DoExpire()
    {
        const bool gate_open = m_now >= m_expected_next_sweep_us;
        const std::vector<TxId> expected = PredictExpiry(m_now);
        const std::vector<TxId> erased = m_pool.ExpireOrphans(m_now);
        const std::vector<Event> events = TakeEvents();

        if (!gate_open) {
            if (!erased.empty() || !events.empty()) Fail("gated sweep mutated the pool");
            if (m_pool.NextSweepAtUs() != m_expected_next_sweep_us) Fail("gated sweep moved the schedule");
            return;
        }
        if (erased != expected) Fail("sweep result does not match the timestamp oracle");
        if (events.size() != expected.size()) Fail("sweep event count mismatch");
        for (size_t i = 0; i < events.size(); ++i) {
            if (events[i].added || events[i].id != expected[i] ||
                events[i].cause != RemovalCause::TIMEOUT) {
                Fail("sweep produced a non-timeout event");
            }
        }
        m_expected_next_sweep_us = m_now + m_cfg.pool.sweep_interval_us;
        if (m_pool.NextSweepAtUs() != m_expected_next_sweep_us) Fail("sweep scheduled the wrong next time");
        m_stats.expiries += expected.size();
    }

    void DoEraseForPeer()
    {
        const uint16_t peer = static_cast<uint16_t>(m_rng.RandRange(6));
        std::vector<TxId> expected;
        for (const TxId& id : m_pool.EvictionList()) {
            if (m_ref.at(id).from_peer == peer) expected.push_back(id);
        }
        m_purge_context = peer;
        const size_t count = m_pool.EraseForPeer(peer, m_now);
        m_purge_context.reset();
        const std::vector<Event> events = TakeEvents();
        if (count != expected.size()) Fail("peer purge count does not match the filter oracle");
        if (events.size() != expected.size()) Fail("peer purge event count mismatch");
        for (size_t i = 0; i < events.size(); ++i) {
            if (events[i].added || events[i].id != expected[i]) Fail("peer purge erased the wrong entry");
        }
        m_stats.peer_purges += count;
    }

    void DoDirectLimit()
    {
        // Every public operation restores the cap, so a direct call is a no-op.
        if (m_pool.LimitOrphans(m_now) != 0) Fail("limit evicted below the cap");
        if (!TakeEvents().empty()) Fail("no-op limit produced events");
    }

    // ---- structural verification ----

    void CheckMemoryModel() const
    {
        // Reference accounting straight from the stated byte formulas.
        std::map<TxId, std::set<TxId>> links;
        for (const auto& [id, entry] : m_ref) {
            for (const TxId& p : entry.parents) links[p].insert(id);
        }
        for (const Arch arch : {Arch::BITS64, Arch::BITS32}) {
            const uint64_t entry_cost = arch == Arch::BITS64 ? 72 : 60;
            const uint64_t ptr = arch == Arch::BITS64 ? 8 : 4;
            uint64_t link_bytes = 0;
            for (const auto& [p, spenders] : links) link_bytes += 36 + ptr * spenders.size();
            const OverheadBreakdown got = m_pool.MemoryOverhead(arch);
            if (got.entry_bytes != entry_cost * m_ref.size()) Fail("entry bytes mismatch");
            if (got.parent_link_bytes != link_bytes) Fail("parent link bytes mismatch");
            if (got.eviction_list_bytes != ptr * m_ref.size()) Fail("eviction list bytes mismatch");
            if (got.TotalBytes() != got.entry_bytes + got.parent_link_bytes + got.eviction_list_bytes) {
                Fail("total bytes is not the sum of the parts");
            }
        }
    }

    void DeepCheck() const
    {
        // entries <-> reference equality.
        if (m_pool.Size() != m_ref.size()) Fail("size diverged from the reference");
        for (const auto& [id, entry] : m_ref) {
            const OrphanEntry* got = m_pool.Get(id);
            if (!got) Fail("reference entry missing from the pool");
            if (got->from_peer != entry.from_peer) Fail("from_peer diverged");
            if (got->expires_at_us != entry.expires_at_us) Fail("expiry timestamp diverged");
            if (got->tx.parents != entry.parents) Fail("parent list diverged");
        }

        // entries <-> eviction list bijection with back-pointer consistency.
        const auto& list = m_pool.EvictionList();
        if (list.size() != m_pool.Size()) Fail("eviction list size diverged");
        for (size_t pos = 0; pos < list.size(); ++pos) {
            const OrphanEntry* entry = m_pool.Get(list[pos]);
            if (!entry) Fail("eviction list references a missing entry");
            if (entry->list_pos != pos) Fail("eviction list back-pointer broken");
        }

        // parent links == brute-force reconstruction over distinct parents.
        std::map<TxId, std::set<TxId>> expect;
        for (const auto& [id, entry] : m_ref) {
            for (const TxId& p : entry.parents) expect[p].insert(id);
        }
        const auto& got = m_pool.ParentLinks();
        if (got.size() != expect.size()) Fail("parent link key count diverged");
        for (const auto& [p, spenders] : expect) {
            const auto it = got.find(p);
            if (it == got.end()) Fail("parent link key missing");
            if (it->second != spenders) Fail("parent link spender set diverged");
        }
        for (const auto& [p, spenders] : got) {
            if (spenders.empty()) Fail("parent links hold an empty set");
        }

        if (m_pool.Size() > m_cfg.pool.max_size) Fail("cap invariant broken");

        // OrphansSpending must agree with the reconstruction on hits and misses.
        for (const TxId& p : m_parent_universe) {
            const auto it = expect.find(p);
            const std::set<TxId> spending = m_pool.OrphansSpending(p);
            if (it == expect.end()) {
                if (!spending.empty()) Fail("spending set reported for an unlinked parent");
            } else if (spending != it->second) {
                Fail("spending set diverged");
            }
        }
    }

    void CheckCounters() const
    {
        if (m_pool.NextSweepAtUs() != m_expected_next_sweep_us) Fail("sweep schedule diverged");
        if (m_pool.TotalAdds() != m_stats.adds) Fail("total add counter diverged");
        const auto& counts = m_pool.RemovalCounts();
        uint64_t sum = 0;
        for (const uint64_t c : counts) sum += c;
        if (sum != m_pool.TotalRemovals()) Fail("cause counters do not sum to total removals");
        if (m_stats.adds - sum != m_pool.Size()) Fail("adds minus removals is not the resident count");
        if (counts[static_cast<size_t>(RemovalCause::TIMEOUT)] != m_stats.expiries) {
            Fail("timeout counter diverged");
        }
        if (counts[static_cast<size_t>(RemovalCause::POOL_FULL)] != m_stats.pool_full) {
            Fail("pool-full counter diverged");
        }
        if (counts[static_cast<size_t>(RemovalCause::PEER_DISCONNECTED)] != m_stats.peer_purges) {
            Fail("peer-disconnect counter diverged");
        }
        if (m_pool.PeakSize() < m_pool.Size()) Fail("peak below current size");
        // Peak is sampled between insertion and cap enforcement, so it may
        // read one above the cap but never more.
        if (m_pool.PeakSize() > m_cfg.pool.max_size + 1) Fail("peak above the transient cap");
    }

    Config m_cfg;
    OrphanPool m_pool;
    Rng m_rng;
    Stats m_stats;

    std::map<TxId, RefEntry> m_ref;
    std::vector<Event> m_events;
    std::vector<TxId> m_parent_universe;
    std::vector<TxId> m_seen_ids;

    int64_t m_now{0};
    int64_t m_expected_next_sweep_us{0};
    uint64_t m_op{0};

    std::optional<Transaction> m_pending_add;
    bool m_add_context{false};
    std::optional<RemovalCause> m_erase_context;
    std::optional<uint16_t> m_purge_context;
};

} // namespace orphansim::test

#endif // ORPHANSIM_TESTS_POOL_MODEL_HPP
