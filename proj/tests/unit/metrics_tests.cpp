// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/error.hpp>
#include <orphansim/metrics.hpp>
#include <orphansim/random.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

using namespace orphansim;

namespace {

TxId TestId(uint32_t tag)
{
    TxId id{};
    id.bytes[0] = static_cast<unsigned char>(tag);
    id.bytes[1] = static_cast<unsigned char>(tag >> 8);
    return id;
}

} // namespace

TEST_CASE("summaries match hand-computed moments and nearest-rank quantiles")
{
    const std::vector<double> samples{5.0, 1.0, 3.0, 2.0, 4.0};
    const DistributionSummary s = Summarize(samples);
    CHECK(s.count == 5);
    CHECK(s.mean == doctest::Approx(3.0));
    CHECK(s.stddev == doctest::Approx(std::sqrt(2.0))); // population variance
    CHECK(s.min == 1.0);
    CHECK(s.max == 5.0);
    CHECK(s.p25 == 2.0); // nearest rank: ceil(0.25 * 5) = 2nd smallest
    CHECK(s.p50 == 3.0);
    CHECK(s.p75 == 4.0);
    CHECK(s.p90 == 5.0);
    CHECK(s.p99 == 5.0);

    const std::vector<double> one{7.0};
    const DistributionSummary single = Summarize(one);
    CHECK(single.count == 1);
    CHECK(single.mean == 7.0);
    CHECK(single.stddev == 0.0);
    CHECK(single.p25 == 7.0);
    CHECK(single.p99 == 7.0);

    CHECK_THROWS_WITH_AS(Summarize({}), "cannot summarize an empty sample", ConfigError);
    const DistributionSummary zero = SummarizeOrZero({});
    CHECK(zero.count == 0);
    CHECK(zero.mean == 0.0);
    CHECK(zero.max == 0.0);
}

TEST_CASE("summary quantiles agree with a counting oracle on random data")
{
    Rng rng(0x53554d4dULL); // "SUMM"
    std::vector<double> samples;
    for (int i = 0; i < 1000; ++i) {
        samples.push_back(static_cast<double>(rng.RandRange(50))); // heavy ties
    }
    const DistributionSummary s = Summarize(samples);

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const auto nearest_rank = [&](double p) {
        const size_t rank = static_cast<size_t>(std::ceil(p * static_cast<double>(sorted.size())));
        return sorted[std::max<size_t>(1, std::min(rank, sorted.size())) - 1];
    };
    CHECK(s.p25 == nearest_rank(0.25));
    CHECK(s.p50 == nearest_rank(0.50));
    CHECK(s.p75 == nearest_rank(0.75));
    CHECK(s.p90 == nearest_rank(0.90));
    CHECK(s.p99 == nearest_rank(0.99));
    CHECK(s.min == sorted.front());
    CHECK(s.max == sorted.back());

    double sum = 0.0;
    for (const double x : samples) sum += x;
    CHECK(s.mean == doctest::Approx(sum / 1000.0));
}

TEST_CASE("ccdf reports the strictly-greater mass per distinct value")
{
    const std::vector<double> samples{1.0, 1.0, 2.0, 3.0};
    const auto ccdf = Ccdf(samples);
    REQUIRE(ccdf.size() == 3);
    CHECK(ccdf[0] == std::pair<double, double>{1.0, 0.5});
    CHECK(ccdf[1] == std::pair<double, double>{2.0, 0.25});
    CHECK(ccdf[2] == std::pair<double, double>{3.0, 0.0});

    const std::vector<double> equal{5.0, 5.0};
    const auto flat = Ccdf(equal);
    REQUIRE(flat.size() == 1);
    CHECK(flat[0] == std::pair<double, double>{5.0, 0.0});

    CHECK_THROWS_WITH_AS(Ccdf({}), "cannot compute a CCDF over an empty sample", ConfigError);
}

TEST_CASE("ccdf agrees with a brute-force count on random multisets")
{
    Rng rng(0x43434446ULL); // "CCDF"
    std::vector<double> samples;
    for (int i = 0; i < 500; ++i) samples.push_back(static_cast<double>(rng.RandRange(40)));

    const auto ccdf = Ccdf(samples);
    CHECK(std::is_sorted(ccdf.begin(), ccdf.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; }));
    for (const auto& [value, prob] : ccdf) {
        const auto above = static_cast<double>(
            std::count_if(samples.begin(), samples.end(), [&](double x) { return x > value; }));
        CHECK(prob == doctest::Approx(above / 500.0));
        CHECK(std::count(samples.begin(), samples.end(), value) > 0);
    }
    // Every distinct sample value appears exactly once.
    std::vector<double> distinct = samples;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    CHECK(ccdf.size() == distinct.size());
}

TEST_CASE("network overhead charges 64 bytes per addition")
{
    SUBCASE("one unique orphan added three times")
    {
        NodeStats s;
        s.unique_orphans = 1;
        s.total_orphan_additions = 3;
        const NetworkOverhead o = ComputeNetworkOverhead(s);
        CHECK(o.unique_bytes == 64);
        CHECK(o.duplicate_bytes == 128);
        CHECK(o.duplicate_fraction == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("no orphans means no overhead")
    {
        const NetworkOverhead o = ComputeNetworkOverhead(NodeStats{});
        CHECK(o.unique_bytes == 0);
        CHECK(o.duplicate_bytes == 0);
        CHECK(o.duplicate_fraction == 0.0);
    }
    SUBCASE("no duplicates means zero fraction")
    {
        NodeStats s;
        s.unique_orphans = 5;
        s.total_orphan_additions = 5;
        const NetworkOverhead o = ComputeNetworkOverhead(s);
        CHECK(o.duplicate_bytes == 0);
        CHECK(o.duplicate_fraction == 0.0);
    }
    SUBCASE("byte identity holds across random counter pairs")
    {
        Rng rng(0x4f564844ULL); // "OVHD"
        for (int i = 0; i < 200; ++i) {
            NodeStats s;
            s.unique_orphans = rng.RandRange(1000);
            s.total_orphan_additions = s.unique_orphans + rng.RandRange(1000);
            const NetworkOverhead o = ComputeNetworkOverhead(s);
            CHECK(o.unique_bytes + o.duplicate_bytes == 64 * s.total_orphan_additions);
            CHECK(o.unique_bytes == 64 * s.unique_orphans);
            if (s.total_orphan_additions > 0) {
                CHECK(o.duplicate_fraction ==
                      doctest::Approx(static_cast<double>(o.duplicate_bytes) /
                                      static_cast<double>(64 * s.total_orphan_additions)));
            }
        }
    }
}

TEST_CASE("removal breakdown normalizes cause counts to fractions")
{
    NodeStats s;
    s.removal_counts = {2, 1, 0, 3, 0, 0};
    const auto breakdown = RemovalBreakdown(s);
    CHECK(breakdown.at(RemovalCause::PARENTS_RECEIVED) == doctest::Approx(1.0 / 3.0));
    CHECK(breakdown.at(RemovalCause::PARENTS_IN_BLOCK) == doctest::Approx(1.0 / 6.0));
    CHECK(breakdown.at(RemovalCause::POOL_FULL) == 0.0);
    CHECK(breakdown.at(RemovalCause::TIMEOUT) == doctest::Approx(0.5));
    double total = 0.0;
    for (const auto& [cause, fraction] : breakdown) total += fraction;
    CHECK(total == doctest::Approx(1.0));

    CHECK_THROWS_WITH_AS(RemovalBreakdown(NodeStats{}), "node recorded no orphan removals",
                         ConfigError);
}

TEST_CASE("the collector rebuilds counters and enforces stream integrity")
{
    MetricsCollector collector(2);
    const TxId a = TestId(1);
    const TxId b = TestId(2);

    collector.RecordAdd(0, 10, a);
    collector.RecordAdd(0, 20, b);
    collector.RecordErase(0, 30, a, RemovalCause::PARENTS_RECEIVED);
    collector.RecordAdd(0, 40, a); // re-addition after an erase is legal
    collector.RecordErase(0, 50, a, RemovalCause::POOL_FULL);

    CHECK(collector.UniqueOrphans(0) == 2);
    CHECK(collector.TotalAdditions(0) == 3);
    CHECK(collector.RemovalCounts(0)[static_cast<size_t>(RemovalCause::PARENTS_RECEIVED)] == 1);
    CHECK(collector.RemovalCounts(0)[static_cast<size_t>(RemovalCause::POOL_FULL)] == 1);
    CHECK(collector.EverOrphaned(0, a));
    CHECK(collector.EverOrphaned(0, b));
    CHECK_FALSE(collector.EverOrphaned(0, TestId(3)));

    // Nodes are independent.
    CHECK(collector.UniqueOrphans(1) == 0);
    collector.RecordAdd(1, 60, a);
    CHECK(collector.UniqueOrphans(1) == 1);
    CHECK(collector.UniqueOrphans(0) == 2);

    SUBCASE("adding a resident orphan is a stream violation")
    {
        const std::string expected =
            "audit integrity: duplicate addition of resident orphan " + b.ToHex();
        CHECK_THROWS_WITH_AS(collector.RecordAdd(0, 70, b), expected.c_str(), SimError);
    }
    SUBCASE("erasing a non-resident orphan is a stream violation")
    {
        const std::string expected = "audit integrity: erase of non-resident orphan " + a.ToHex();
        CHECK_THROWS_WITH_AS(collector.RecordErase(0, 70, a, RemovalCause::TIMEOUT),
                             expected.c_str(), SimError);
    }
    SUBCASE("events for unknown nodes are rejected")
    {
        CHECK_THROWS_WITH_AS(collector.RecordAdd(2, 70, a), "orphan event for unknown node",
                             SimError);
    }
}
