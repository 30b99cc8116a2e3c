// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/error.hpp>
#include <orphansim/orphan_pool.hpp>
#include <orphansim/random.hpp>
#include <orphansim/time_units.hpp>

#include "../support/pool_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

using namespace orphansim;

namespace {

struct RecordedEvent {
    bool added{false};
    TxId id;
    uint16_t from_peer{0};
    RemovalCause cause{RemovalCause::PARENTS_RECEIVED};
    int64_t at_us{0};
};

class RecordingListener : public OrphanPool::Listener
{
public:
    void OrphanAdded(int64_t now_us, const TxId& id, uint16_t from_peer) override
    {
        events.push_back({true, id, from_peer, RemovalCause::PARENTS_RECEIVED, now_us});
    }
    void OrphanErased(int64_t now_us, const TxId& id, uint16_t from_peer, RemovalCause cause) override
    {
        events.push_back({false, id, from_peer, cause, now_us});
    }

    std::vector<RecordedEvent> events;
};

TxId TestId(uint32_t tag)
{
    TxId id{};
    id.bytes[0] = static_cast<unsigned char>(tag);
    id.bytes[1] = static_cast<unsigned char>(tag >> 8);
    id.bytes[2] = static_cast<unsigned char>(tag >> 16);
    id.bytes[3] = static_cast<unsigned char>(tag >> 24);
    id.bytes[31] = 0x5a;
    return id;
}

Transaction TestTx(uint32_t tag, std::vector<TxId> parents = {TxId{}}, uint32_t size_bytes = 250)
{
    Transaction tx;
    tx.id = TestId(tag);
    tx.parents = std::move(parents);
    tx.size_bytes = size_bytes;
    tx.fee_sat = 1000;
    return tx;
}

} // namespace

TEST_CASE("removal cause names round-trip through their parser")
{
    const std::array<std::string, REMOVAL_CAUSE_COUNT> expected = {
        "parents_received", "parents_in_block", "pool_full",
        "timeout",          "invalid",          "peer_disconnected",
    };
    for (size_t i = 0; i < REMOVAL_CAUSE_COUNT; ++i) {
        const auto cause = static_cast<RemovalCause>(i);
        CHECK(RemovalCauseName(cause) == expected[i]);
        RemovalCause parsed{};
        REQUIRE(RemovalCauseFromName(expected[i], parsed));
        CHECK(parsed == cause);
    }
    RemovalCause parsed{};
    CHECK_FALSE(RemovalCauseFromName("evicted", parsed));
    CHECK_FALSE(RemovalCauseFromName("", parsed));
    CHECK_FALSE(RemovalCauseFromName("Timeout", parsed));
}

TEST_CASE("constructor rejects degenerate options")
{
    OrphanPool::Options opts;
    SUBCASE("zero capacity")
    {
        opts.max_size = 0;
        CHECK_THROWS_WITH_AS(OrphanPool{opts}, "orphan pool max_size must be at least 1", ConfigError);
    }
    SUBCASE("non-positive expiry")
    {
        opts.expiry_us = 0;
        CHECK_THROWS_AS(OrphanPool{opts}, ConfigError);
        opts.expiry_us = -1;
        CHECK_THROWS_AS(OrphanPool{opts}, ConfigError);
    }
    SUBCASE("non-positive sweep interval")
    {
        opts.sweep_interval_us = 0;
        CHECK_THROWS_AS(OrphanPool{opts}, ConfigError);
    }
    SUBCASE("zero size limit")
    {
        opts.max_orphan_size_bytes = 0;
        CHECK_THROWS_AS(OrphanPool{opts}, ConfigError);
    }
}

TEST_CASE("admission classifies added, duplicate and oversized transactions")
{
    OrphanPool::Options opts;
    opts.max_orphan_size_bytes = 1000;
    RecordingListener listener;
    OrphanPool pool(opts, &listener);

    const Transaction tx = TestTx(1, {TestId(100)}, 1000); // boundary size admits
    CHECK(pool.AddOrphan(tx, 3, 0) == AddResult::ADDED);
    CHECK(pool.Contains(tx.id));
    CHECK(pool.Size() == 1);
    CHECK(pool.TotalAdds() == 1);

    CHECK(pool.AddOrphan(tx, 4, 10) == AddResult::ALREADY_PRESENT);
    CHECK(pool.Size() == 1);
    CHECK(pool.TotalAdds() == 1);
    CHECK(pool.Get(tx.id)->from_peer == 3); // the original announcement wins

    const Transaction big = TestTx(2, {TestId(100)}, 1001);
    CHECK(pool.AddOrphan(big, 3, 20) == AddResult::TOO_LARGE);
    CHECK_FALSE(pool.Contains(big.id));
    CHECK(pool.TotalAdds() == 1);
    CHECK(pool.TotalRemovals() == 0);

    // Exactly one event: the single successful add.
    REQUIRE(listener.events.size() == 1);
    CHECK(listener.events[0].added);
    CHECK(listener.events[0].id == tx.id);
    CHECK(listener.events[0].from_peer == 3);
}

TEST_CASE("expiry boundaries follow the timestamps")
{
    OrphanPool::Options opts;
    opts.expiry_us = MinutesToMicros(20);
    opts.sweep_interval_us = MinutesToMicros(5);

    SUBCASE("a sweep one minute early erases nothing")
    {
        OrphanPool pool(opts);
        pool.AddOrphan(TestTx(1), 0, 0);
        CHECK(pool.ExpireOrphans(MinutesToMicros(19)).empty());
        CHECK(pool.Contains(TestId(1)));
    }
    SUBCASE("the expiry instant itself is inclusive")
    {
        OrphanPool pool(opts);
        pool.AddOrphan(TestTx(1), 0, 0);
        const std::vector<TxId> erased = pool.ExpireOrphans(MinutesToMicros(20));
        REQUIRE(erased.size() == 1);
        CHECK(erased[0] == TestId(1));
        CHECK(pool.Size() == 0);
        CHECK(pool.RemovalCounts()[static_cast<size_t>(RemovalCause::TIMEOUT)] == 1);
    }
    SUBCASE("entries inserted later survive an earlier cohort's expiry")
    {
        OrphanPool pool(opts);
        pool.AddOrphan(TestTx(1), 0, 0);
        pool.AddOrphan(TestTx(2), 0, MinutesToMicros(6));
        const std::vector<TxId> erased = pool.ExpireOrphans(MinutesToMicros(21));
        REQUIRE(erased.size() == 1);
        CHECK(erased[0] == TestId(1));
        CHECK(pool.Contains(TestId(2)));
    }
}

TEST_CASE("expiry sweeps are gated by the sweep interval")
{
    OrphanPool::Options opts;
    opts.expiry_us = SecondsToMicros(INT64_C(1));
    opts.sweep_interval_us = MinutesToMicros(60);
    OrphanPool pool(opts);

    // The admission at t=0 runs the initial sweep and books the next one an
    // hour out, so the entry outlives its expiry stamp until then.
    pool.AddOrphan(TestTx(1), 0, 0);
    CHECK(pool.NextSweepAtUs() == MinutesToMicros(60));
    CHECK(pool.ExpireOrphans(SecondsToMicros(INT64_C(10))).empty());
    CHECK(pool.Contains(TestId(1)));
    CHECK(pool.NextSweepAtUs() == MinutesToMicros(60)); // gated call does not reschedule

    const std::vector<TxId> erased = pool.ExpireOrphans(MinutesToMicros(60));
    REQUIRE(erased.size() == 1);
    CHECK(erased[0] == TestId(1));
    CHECK(pool.NextSweepAtUs() == MinutesToMicros(60) + opts.sweep_interval_us);
}

TEST_CASE("duplicate and oversized checks run before the sweep")
{
    OrphanPool::Options opts;
    opts.expiry_us = SecondsToMicros(INT64_C(1));
    opts.sweep_interval_us = SecondsToMicros(INT64_C(1));
    opts.max_orphan_size_bytes = 1000;
    OrphanPool pool(opts);

    pool.AddOrphan(TestTx(1), 0, 0);

    // Both rejected admissions happen long past the entry's expiry, yet the
    // entry survives because rejection short-circuits ahead of the sweep.
    CHECK(pool.AddOrphan(TestTx(1), 0, SecondsToMicros(INT64_C(10))) == AddResult::ALREADY_PRESENT);
    CHECK(pool.Contains(TestId(1)));
    CHECK(pool.AddOrphan(TestTx(2, {TxId{}}, 2000), 0, SecondsToMicros(INT64_C(10))) == AddResult::TOO_LARGE);
    CHECK(pool.Contains(TestId(1)));

    // A successful admission sweeps first, clearing the stale entry.
    CHECK(pool.AddOrphan(TestTx(3), 0, SecondsToMicros(INT64_C(10))) == AddResult::ADDED);
    CHECK_FALSE(pool.Contains(TestId(1)));
    CHECK(pool.Size() == 1);
    CHECK(pool.RemovalCounts()[static_cast<size_t>(RemovalCause::TIMEOUT)] == 1);
}

TEST_CASE("the size cap evicts exactly one resident per overflow")
{
    OrphanPool::Options opts;
    opts.max_size = 3;
    RecordingListener listener;
    OrphanPool pool(opts, &listener);

    std::set<TxId> all;
    for (uint32_t tag = 1; tag <= 4; ++tag) {
        CHECK(pool.AddOrphan(TestTx(tag), 0, 0) == AddResult::ADDED);
        all.insert(TestId(tag));
    }
    CHECK(pool.Size() == 3);
    CHECK(pool.TotalAdds() == 4);
    CHECK(pool.PeakSize() == 4); // sampled between insert and cap enforcement
    CHECK(pool.RemovalCounts()[static_cast<size_t>(RemovalCause::POOL_FULL)] == 1);

    // Residents plus the single eviction partition the four admissions.
    std::set<TxId> seen;
    for (const TxId& id : pool.EvictionList()) {
        CHECK(all.count(id) == 1);
        seen.insert(id);
    }
    REQUIRE(listener.events.size() == 5); // 4 adds + 1 eviction
    const RecordedEvent& eviction = listener.events.back();
    CHECK_FALSE(eviction.added);
    CHECK(eviction.cause == RemovalCause::POOL_FULL);
    CHECK(seen.count(eviction.id) == 0);
    seen.insert(eviction.id);
    CHECK(seen == all);

    CHECK(pool.LimitOrphans(0) == 0); // direct call below the cap is a no-op
}

TEST_CASE("erase repairs the eviction list via swap-remove")
{
    OrphanPool pool(OrphanPool::Options{});
    pool.AddOrphan(TestTx(1), 0, 0);
    pool.AddOrphan(TestTx(2), 0, 0);
    pool.AddOrphan(TestTx(3), 0, 0);

    REQUIRE(pool.EraseOrphan(TestId(1), RemovalCause::PARENTS_RECEIVED, 0));
    CHECK_FALSE(pool.EraseOrphan(TestId(1), RemovalCause::PARENTS_RECEIVED, 0));

    const auto& list = pool.EvictionList();
    REQUIRE(list.size() == 2);
    for (size_t pos = 0; pos < list.size(); ++pos) {
        const OrphanEntry* entry = pool.Get(list[pos]);
        REQUIRE(entry != nullptr);
        CHECK(entry->list_pos == pos);
    }
    CHECK(pool.RemovalCounts()[static_cast<size_t>(RemovalCause::PARENTS_RECEIVED)] == 1);
}

TEST_CASE("memory overhead matches the per-container formulas")
{
    SUBCASE("an empty pool costs nothing")
    {
        OrphanPool pool(OrphanPool::Options{});
        for (const Arch arch : {Arch::BITS64, Arch::BITS32}) {
            const OverheadBreakdown b = pool.MemoryOverhead(arch);
            CHECK(b.entry_bytes == 0);
            CHECK(b.parent_link_bytes == 0);
            CHECK(b.eviction_list_bytes == 0);
            CHECK(b.TotalBytes() == 0);
        }
    }
    SUBCASE("a thousand entries with one unshared parent each")
    {
        OrphanPool::Options opts;
        opts.max_size = 1000;
        OrphanPool pool(opts);
        for (uint32_t tag = 1; tag <= 1000; ++tag) {
            REQUIRE(pool.AddOrphan(TestTx(tag, {TestId(100000 + tag)}), 0, 0) == AddResult::ADDED);
        }
        const OverheadBreakdown b64 = pool.MemoryOverhead(Arch::BITS64);
        CHECK(b64.entry_bytes == 72'000);
        CHECK(b64.parent_link_bytes == 44'000);
        CHECK(b64.eviction_list_bytes == 8'000);
        CHECK(b64.TotalBytes() == 124'000);

        const OverheadBreakdown b32 = pool.MemoryOverhead(Arch::BITS32);
        CHECK(b32.entry_bytes == 60'000);
        CHECK(b32.parent_link_bytes == 40'000);
        CHECK(b32.eviction_list_bytes == 4'000);
        CHECK(b32.TotalBytes() == 104'000);
    }
    SUBCASE("a shared parent key is charged once")
    {
        OrphanPool pool(OrphanPool::Options{});
        const TxId parent = TestId(77);
        pool.AddOrphan(TestTx(1, {parent}), 0, 0);
        pool.AddOrphan(TestTx(2, {parent}), 0, 0);
        CHECK(pool.MemoryOverhead(Arch::BITS64).parent_link_bytes == 52); // 36 + 2 * 8
        CHECK(pool.MemoryOverhead(Arch::BITS32).parent_link_bytes == 44); // 36 + 2 * 4
    }
    SUBCASE("repeated parents within one transaction are deduplicated")
    {
        OrphanPool pool(OrphanPool::Options{});
        const TxId parent = TestId(77);
        pool.AddOrphan(TestTx(1, {parent, parent}), 0, 0);
        CHECK(pool.MemoryOverhead(Arch::BITS64).parent_link_bytes == 44); // one key, one spender
    }
}

TEST_CASE("spending lookups agree with a linear scan of the entries")
{
    OrphanPool::Options opts;
    opts.max_size = 500;
    OrphanPool pool(opts);
    Rng rng(0x5343414eULL); // "SCAN"

    std::vector<TxId> universe;
    for (int i = 0; i < 12; ++i) universe.push_back(RandomTxId(rng));

    for (uint32_t tag = 1; tag <= 200; ++tag) {
        std::vector<TxId> parents;
        const size_t count = 1 + rng.RandRange(3);
        for (size_t i = 0; i < count; ++i) {
            parents.push_back(universe[rng.RandRange(universe.size())]);
        }
        pool.AddOrphan(TestTx(tag, parents), 0, 0);
        if (tag % 3 == 0) {
            pool.EraseOrphan(TestId(tag / 2), RemovalCause::PARENTS_RECEIVED, 0);
        }
    }

    for (const TxId& parent : universe) {
        std::set<TxId> expected;
        for (const auto& [id, entry] : pool.Entries()) {
            if (std::find(entry.tx.parents.begin(), entry.tx.parents.end(), parent) !=
                entry.tx.parents.end()) {
                expected.insert(id);
            }
        }
        CHECK(pool.OrphansSpending(parent) == expected);
    }
    CHECK(pool.OrphansSpending(TestId(999999)).empty());
    for (const auto& [parent, spenders] : pool.ParentLinks()) {
        CHECK_FALSE(spenders.empty()); // empty sets must be pruned
    }
}

TEST_CASE("peer purge erases exactly the announcer's entries in list order")
{
    OrphanPool::Options opts;
    opts.max_size = 64;
    RecordingListener listener;
    OrphanPool pool(opts, &listener);

    for (uint32_t tag = 1; tag <= 30; ++tag) {
        pool.AddOrphan(TestTx(tag), static_cast<uint16_t>(tag % 3), 0);
    }
    std::vector<TxId> expected;
    for (const TxId& id : pool.EvictionList()) {
        if (pool.Get(id)->from_peer == 1) expected.push_back(id);
    }
    listener.events.clear();

    CHECK(pool.EraseForPeer(1, 0) == expected.size());
    REQUIRE(listener.events.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) {
        CHECK(listener.events[i].id == expected[i]);
        CHECK(listener.events[i].cause == RemovalCause::PEER_DISCONNECTED);
        CHECK(listener.events[i].from_peer == 1);
    }
    CHECK(pool.Size() == 30 - expected.size());
    for (const auto& [id, entry] : pool.Entries()) CHECK(entry.from_peer != 1);
    CHECK(pool.EraseForPeer(1, 0) == 0); // purge is idempotent
}

TEST_CASE("random eviction treats every resident uniformly")
{
    // Fill a pool of 10 and admit an 11th transaction: each of the 11
    // candidates must be evicted with frequency 1/11 within 3 sigma of the
    // binomial over 10000 trials (expected 909.1, sigma 28.7).
    constexpr int TRIALS = 10000;
    constexpr uint32_t CANDIDATES = 11;
    std::array<int, CANDIDATES> victim_counts{};

    for (int trial = 0; trial < TRIALS; ++trial) {
        OrphanPool::Options opts;
        opts.max_size = 10;
        opts.rng_seed = DeriveSeed(0x45564943ULL, static_cast<uint64_t>(trial)); // "EVIC"
        OrphanPool pool(opts);
        for (uint32_t i = 0; i < CANDIDATES; ++i) {
            REQUIRE(pool.AddOrphan(TestTx(i + 1), 0, 0) == AddResult::ADDED);
        }
        REQUIRE(pool.Size() == 10);
        int victims = 0;
        for (uint32_t i = 0; i < CANDIDATES; ++i) {
            if (!pool.Contains(TestId(i + 1))) {
                ++victim_counts[i];
                ++victims;
            }
        }
        REQUIRE(victims == 1);
    }

    const double expected = static_cast<double>(TRIALS) / CANDIDATES;
    const double sigma = std::sqrt(TRIALS * (1.0 / CANDIDATES) * (1.0 - 1.0 / CANDIDATES));
    for (uint32_t i = 0; i < CANDIDATES; ++i) {
        CHECK(victim_counts[i] >= expected - 3.0 * sigma);
        CHECK(victim_counts[i] <= expected + 3.0 * sigma);
    }
}

TEST_CASE("reference model agrees with the pool across random operation mixes")
{
    SUBCASE("balanced mix")
    {
        test::PoolModelHarness::Config cfg;
        cfg.pool.max_size = 10;
        cfg.pool.expiry_us = SecondsToMicros(INT64_C(2000));
        cfg.pool.sweep_interval_us = SecondsToMicros(INT64_C(60));
        cfg.pool.max_orphan_size_bytes = 1000;
        cfg.pool.rng_seed = 7;
        cfg.ops = 30000;
        cfg.seed = 11;
        test::PoolModelHarness harness(cfg);
        test::PoolModelHarness::Stats stats{};
        REQUIRE_NOTHROW(stats = harness.Run());

        // The mix must actually reach every lifecycle path.
        CHECK(stats.adds > 0);
        CHECK(stats.already_present > 0);
        CHECK(stats.too_large > 0);
        CHECK(stats.expiries > 0);
        CHECK(stats.pool_full > 0);
        CHECK(stats.peer_purges > 0);
        CHECK(stats.explicit_erases > 0);
    }
    SUBCASE("tiny cap with heavily gated sweeps")
    {
        test::PoolModelHarness::Config cfg;
        cfg.pool.max_size = 5;
        cfg.pool.expiry_us = SecondsToMicros(INT64_C(10));
        cfg.pool.sweep_interval_us = SecondsToMicros(INT64_C(600));
        cfg.pool.max_orphan_size_bytes = 400;
        cfg.pool.rng_seed = 21;
        cfg.ops = 20000;
        cfg.seed = 22;
        test::PoolModelHarness harness(cfg);
        test::PoolModelHarness::Stats stats{};
        REQUIRE_NOTHROW(stats = harness.Run());
        CHECK(stats.adds > 0);
        CHECK(stats.pool_full > 0);
        CHECK(stats.expiries > 0);
    }
}
