// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/workload.hpp>

#include <orphansim/error.hpp>
#include <orphansim/random.hpp>
#include <orphansim/time_units.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace orphansim {

namespace {

constexpr uint64_t WORKLOAD_STREAM = 0x574b4c44; // "WKLD"

void ValidateWorkloadConfig(const WorkloadConfig& cfg)
{
    if (cfg.tx_count == 0) throw ConfigError("workload tx_count must be at least 1");
    if (!(cfg.parent_count.mean >= 1.0)) throw ConfigError("parent count mean must be at least 1");
    if (!(cfg.parent_count.one_fraction >= 0.0 && cfg.parent_count.one_fraction <= 1.0)) {
        throw ConfigError("parent count one_fraction must lie in [0, 1]");
    }
    if (cfg.size_min_bytes < 1) throw ConfigError("size_min_bytes must be at least 1");
    if (cfg.size_min_bytes > cfg.size_max_bytes) throw ConfigError("size_min_bytes must not exceed size_max_bytes");
    if (!(cfg.nonstandard_fraction >= 0.0 && cfg.nonstandard_fraction < 1.0)) {
        throw ConfigError("nonstandard_fraction must lie in [0, 1)");
    }
    if (std::abs(cfg.feerate_size_correlation) > 1.0) {
        throw ConfigError("feerate_size_correlation must lie in [-1, 1]");
    }
    if (cfg.feerate_size_correlation != 0.0 &&
        (cfg.fee_rate_dist.GetKind() != DistSpec::Kind::LOGNORMAL ||
         cfg.size_dist.GetKind() != DistSpec::Kind::LOGNORMAL)) {
        throw ConfigError("feerate_size_correlation requires log-normal fee_rate and size distributions");
    }
    if (cfg.parent_window == 0) throw ConfigError("parent_window must be at least 1");
    if (cfg.preconfirmed_count == 0) throw ConfigError("preconfirmed_count must be at least 1");
    if (!(cfg.inject_rate_tps > 0.0)) throw ConfigError("inject_rate_tps must be positive");
}

} // namespace

uint32_t SampleParentCount(const ParentCountSpec& spec, Rng& rng)
{
    if (!(spec.mean >= 1.0)) throw ConfigError("parent count mean must be at least 1");
    if (!(spec.one_fraction >= 0.0 && spec.one_fraction <= 1.0)) {
        throw ConfigError("parent count one_fraction must lie in [0, 1]");
    }
    if (spec.one_fraction >= 1.0 || spec.mean <= 1.0) return 1;

    // Tail mean g solves one_fraction + (1 - one_fraction) * (2 + g) == mean.
    const double f = spec.one_fraction;
    const double g = (spec.mean - f) / (1.0 - f) - 2.0;
    if (g < 0.0) throw ConfigError("parent count mean too small for the requested one_fraction");

    if (rng.NextDouble() < f) return 1;
    if (g == 0.0) return 2;

    // Geometric tail over {0,1,...} with mean g via inverse CDF.
    const double p = 1.0 / (1.0 + g);
    const double u = rng.NextDouble();
    double k = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(k >= 0.0)) k = 0.0;
    if (k > 1e6) k = 1e6;
    return 2 + static_cast<uint32_t>(k);
}

Transaction SampleTransaction(const WorkloadConfig& cfg, std::span<const TxId> available_parents, Rng& rng)
{
    if (available_parents.empty()) throw ConfigError("no parent candidates available");

    Transaction tx;
    const uint32_t n_parents = SampleParentCount(cfg.parent_count, rng);
    tx.parents.reserve(n_parents);
    for (uint32_t i = 0; i < n_parents; ++i) {
        tx.parents.push_back(available_parents[rng.RandRange(available_parents.size())]);
    }

    double fee_rate;
    double size_raw;
    const bool coupled = cfg.feerate_size_correlation != 0.0 &&
                         cfg.fee_rate_dist.GetKind() == DistSpec::Kind::LOGNORMAL &&
                         cfg.size_dist.GetKind() == DistSpec::Kind::LOGNORMAL;
    if (coupled) {
        const double rho = cfg.feerate_size_correlation;
        if (std::abs(rho) > 1.0) throw ConfigError("feerate_size_correlation must lie in [-1, 1]");
        const double z_rate = rng.NextNormal();
        const double z_size = rho * z_rate + std::sqrt(1.0 - rho * rho) * rng.NextNormal();
        fee_rate = cfg.fee_rate_dist.FromNormal(z_rate);
        size_raw = cfg.size_dist.FromNormal(z_size);
    } else {
        fee_rate = cfg.fee_rate_dist.Sample(rng);
        size_raw = cfg.size_dist.Sample(rng);
    }

    int64_t size = std::llround(size_raw);
    size = std::clamp<int64_t>(size, cfg.size_min_bytes, cfg.size_max_bytes);
    tx.size_bytes = static_cast<uint32_t>(size);

    const double fee = fee_rate * static_cast<double>(size);
    tx.fee_sat = fee <= 0.0 ? 0 : static_cast<uint64_t>(std::llround(std::min(fee, 9.0e18)));

    tx.standard = !(rng.NextDouble() < cfg.nonstandard_fraction);
    tx.id = RandomTxId(rng);
    return tx;
}

Workload BuildWorkload(const WorkloadConfig& cfg, uint32_t node_count)
{
    ValidateWorkloadConfig(cfg);
    if (node_count == 0) throw ConfigError("node_count must be at least 1");

    Rng rng(DeriveSeed(cfg.seed, WORKLOAD_STREAM));
    Workload w;
    w.txs.reserve(cfg.tx_count);
    w.announce_times_us.reserve(cfg.tx_count);
    w.origin_nodes.reserve(cfg.tx_count);

    std::unordered_set<TxId, TxIdHasher> used;
    used.reserve(cfg.tx_count + cfg.preconfirmed_count);
    w.preconfirmed.reserve(cfg.preconfirmed_count);
    for (uint32_t i = 0; i < cfg.preconfirmed_count; ++i) {
        TxId id = RandomTxId(rng);
        while (!used.insert(id).second) id = RandomTxId(rng);
        w.preconfirmed.push_back(id);
    }

    std::vector<TxId> recent = w.preconfirmed;
    recent.reserve(cfg.preconfirmed_count + cfg.tx_count);

    int64_t now_us = 0;
    for (uint64_t i = 0; i < cfg.tx_count; ++i) {
        const double gap_s = -std::log1p(-rng.NextDouble()) / cfg.inject_rate_tps;
        now_us += std::max<int64_t>(0, SecondsToMicros(gap_s));

        const size_t lo = recent.size() > cfg.parent_window ? recent.size() - cfg.parent_window : 0;
        const std::span<const TxId> available(recent.data() + lo, recent.size() - lo);

        Transaction tx = SampleTransaction(cfg, available, rng);
        while (!used.insert(tx.id).second) tx.id = RandomTxId(rng);

        w.origin_nodes.push_back(static_cast<uint32_t>(rng.RandRange(node_count)));
        w.announce_times_us.push_back(now_us);
        recent.push_back(tx.id);
        w.txs.push_back(std::move(tx));
    }
    return w;
}

void WriteWorkloadJsonl(const Workload& workload, std::ostream& out)
{
    for (size_t i = 0; i < workload.txs.size(); ++i) {
        const Transaction& tx = workload.txs[i];
        nlohmann::json line;
        line["id"] = tx.id.ToHex();
        line["size_bytes"] = tx.size_bytes;
        line["fee_sat"] = tx.fee_sat;
        nlohmann::json parents = nlohmann::json::array();
        for (const TxId& p : tx.parents) parents.push_back(p.ToHex());
        line["parents"] = std::move(parents);
        line["standard"] = tx.standard;
        line["announce_time_s"] = MicrosToSeconds(workload.announce_times_us[i]);
        line["origin_node"] = workload.origin_nodes[i];
        out << line.dump() << '\n';
    }
}

void WriteWorkloadJsonlFile(const Workload& workload, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open workload file for writing: " + path);
    WriteWorkloadJsonl(workload, out);
    if (!out) throw ConfigError("failed writing workload file: " + path);
}

namespace {

const std::set<std::string>& WorkloadLineKeys()
{
    static const std::set<std::string> keys{
        "id", "size_bytes", "fee_sat", "parents", "standard", "announce_time_s", "origin_node"};
    return keys;
}

[[noreturn]] void LineError(size_t line_no, const std::string& what)
{
    throw ConfigError("workload line " + std::to_string(line_no) + ": " + what);
}

} // namespace

Workload ReadWorkloadJsonl(std::istream& in)
{
    Workload w;
    std::unordered_map<TxId, size_t, TxIdHasher> index_of;
    std::unordered_map<uint32_t, int64_t> last_time_per_origin;
    std::set<TxId> undefined_parents;

    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            LineError(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) LineError(line_no, "expected a JSON object");

        for (const auto& item : j.items()) {
            if (!WorkloadLineKeys().count(item.key())) {
                LineError(line_no, "unknown key '" + item.key() + "'");
            }
        }
        for (const std::string& key : WorkloadLineKeys()) {
            if (!j.contains(key)) LineError(line_no, "missing key '" + key + "'");
        }

        Transaction tx;
        if (!j["id"].is_string()) LineError(line_no, "'id' must be a hex string");
        const auto id = TxId::FromHex(j["id"].get<std::string>());
        if (!id) LineError(line_no, "'id' must be 64 hex characters");
        tx.id = *id;
        if (index_of.count(tx.id)) LineError(line_no, "duplicate transaction id " + tx.id.ToHex());

        if (!j["size_bytes"].is_number_unsigned()) LineError(line_no, "'size_bytes' must be a non-negative integer");
        const uint64_t size = j["size_bytes"].get<uint64_t>();
        if (size < 1 || size > 4'000'000) LineError(line_no, "'size_bytes' out of range");
        tx.size_bytes = static_cast<uint32_t>(size);

        if (!j["fee_sat"].is_number_unsigned()) LineError(line_no, "'fee_sat' must be a non-negative integer");
        tx.fee_sat = j["fee_sat"].get<uint64_t>();

        if (!j["parents"].is_array() || j["parents"].empty()) {
            LineError(line_no, "'parents' must be a non-empty array");
        }
        for (const auto& p : j["parents"]) {
            if (!p.is_string()) LineError(line_no, "'parents' entries must be hex strings");
            const auto pid = TxId::FromHex(p.get<std::string>());
            if (!pid) LineError(line_no, "'parents' entries must be 64 hex characters");
            tx.parents.push_back(*pid);
        }

        if (!j["standard"].is_boolean()) LineError(line_no, "'standard' must be a boolean");
        tx.standard = j["standard"].get<bool>();

        if (!j["announce_time_s"].is_number()) LineError(line_no, "'announce_time_s' must be a number");
        const double t_s = j["announce_time_s"].get<double>();
        if (!(t_s >= 0.0)) LineError(line_no, "'announce_time_s' must be non-negative");
        const int64_t t_us = SecondsToMicros(t_s);

        if (!j["origin_node"].is_number_unsigned()) LineError(line_no, "'origin_node' must be a non-negative integer");
        const uint32_t origin = j["origin_node"].get<uint32_t>();

        // Announcements from one origin must not go backwards in time.
        const auto [it, first] = last_time_per_origin.try_emplace(origin, t_us);
        if (!first) {
            if (t_us < it->second) LineError(line_no, "announce times decrease for origin " + std::to_string(origin));
            it->second = t_us;
        }

        index_of.emplace(tx.id, w.txs.size());
        w.announce_times_us.push_back(t_us);
        w.origin_nodes.push_back(origin);
        w.txs.push_back(std::move(tx));
    }

    if (w.txs.empty()) throw ConfigError("workload file contains no transactions");

    // Parents defined later in the file would make the trace non-causal;
    // parents never defined at all become the pre-confirmed set.
    for (size_t i = 0; i < w.txs.size(); ++i) {
        for (const TxId& p : w.txs[i].parents) {
            const auto it = index_of.find(p);
            if (it == index_of.end()) {
                undefined_parents.insert(p);
            } else if (it->second >= i) {
                throw ConfigError("workload transaction " + w.txs[i].id.ToHex() +
                                  " references parent " + p.ToHex() + " that is not earlier in the file");
            }
        }
    }
    w.preconfirmed.assign(undefined_parents.begin(), undefined_parents.end());
    return w;
}

Workload ReadWorkloadJsonlFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open workload file: " + path);
    return ReadWorkloadJsonl(in);
}

} // namespace orphansim
