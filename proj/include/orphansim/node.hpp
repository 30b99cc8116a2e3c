// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_NODE_HPP
#define ORPHANSIM_NODE_HPP

#include <orphansim/catalog.hpp>
#include <orphansim/orphan_pool.hpp>
#include <orphansim/time_units.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace orphansim {

struct Block {
    uint32_t height{0};
    std::vector<uint32_t> txs; //!< catalog indices, topologically ordered
};

enum class WireKind : uint8_t {
    INV,     //!< 32-byte txid announcement
    GETDATA, //!< 32-byte txid request
    TX,      //!< full transaction payload
};

//! One outbound message produced by a node handler. The network layer turns
//! these into delivery events.
struct Outgoing {
    uint16_t to{0};
    WireKind kind{WireKind::INV};
    uint32_t tx_index{0};
};

struct ValidationResult {
    enum class Kind : uint8_t {
        VALID,
        ORPHAN,
        INVALID_NONSTANDARD,
        INVALID_LOW_FEE,
    };

    Kind kind{Kind::VALID};
    //! Distinct unseen parents, in first-appearance order. Only for ORPHAN.
    std::vector<TxId> missing_parents;

    bool IsValid() const { return kind == Kind::VALID; }
    bool IsOrphan() const { return kind == Kind::ORPHAN; }
    bool IsInvalid() const { return kind == Kind::INVALID_NONSTANDARD || kind == Kind::INVALID_LOW_FEE; }
};

enum class TxState : uint8_t {
    NONE = 0,
    REQUESTED,      //!< getdata outstanding
    IN_ORPHAN_POOL,
    IN_MEMPOOL,
    CONFIRMED,
};

//! Run-level observer of per-node orphan traffic; feeds metrics and audit.
class NodeObserver
{
public:
    virtual ~NodeObserver() = default;
    virtual void OnOrphanAdd(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer) = 0;
    virtual void OnOrphanErase(uint32_t node, int64_t now_us, const TxId& id, uint16_t from_peer,
                               RemovalCause cause) = 0;
    virtual void OnMissingParents(uint32_t node, int64_t now_us, std::span<const TxId> parents) = 0;
};

struct NodeConfig {
    uint16_t id{0};
    OrphanPool::Options pool;
    double min_fee_rate{1.0}; //!< sat/byte mempool admission floor
    int64_t punishment_us{SecondsToMicros(int64_t{60})};
};

/**
 * Message-level behaviour of one simulated peer: mempool admission with a
 * static fee floor, orphan pool management, inv/getdata bookkeeping, flood
 * relay of accepted transactions, and punishment of peers whose orphans
 * prove invalid. A transaction is in at most one of {requested, orphan pool,
 * mempool, confirmed} at any time, enforced by a single state array.
 */
class Node : private OrphanPool::Listener
{
public:
    Node(const NodeConfig& config, TxCatalog& catalog, NodeObserver* observer = nullptr);

    //! Policy order: standardness, then the fee floor, then parent lookup.
    ValidationResult ValidateTx(const Transaction& tx) const;

    /**
     * Full transaction arrival. Drops punished-peer and already-known
     * transactions; otherwise accepts to the mempool (with flood relay and
     * orphan resolution), pools an orphan (requesting its missing parents
     * from the sender), or discards an invalid transaction.
     */
    void HandleTx(const Transaction& tx, uint16_t from_peer, int64_t now_us, std::vector<Outgoing>& out);

    /**
     * Cascade acceptance of pooled orphans whose last missing parent just
     * became available. Work queue is FIFO over discovery order; spenders of
     * one parent are visited in txid order. Returns newly accepted ids.
     */
    std::vector<TxId> ProcessResolvedOrphans(const TxId& accepted, int64_t now_us, std::vector<Outgoing>& out);

    //! Connected-block arrival; heights must be consecutive.
    void HandleBlock(const Block& block, int64_t now_us, std::vector<Outgoing>& out);

    void HandleInv(std::span<const TxId> ids, uint16_t from_peer, std::vector<Outgoing>& out);
    void HandleInvIndex(uint32_t tx_index, uint16_t from_peer, std::vector<Outgoing>& out);
    void HandleGetData(std::span<const TxId> ids, uint16_t from_peer, std::vector<Outgoing>& out);
    void HandleGetDataIndex(uint32_t tx_index, uint16_t from_peer, std::vector<Outgoing>& out);

    //! Returns the number of orphans purged from the pool.
    size_t OnPeerDisconnect(uint16_t peer, int64_t now_us);
    void OnPeerConnect(uint16_t peer);
    bool HasPeer(uint16_t peer) const { return m_peers.count(peer) != 0; }
    const std::set<uint16_t>& Peers() const { return m_peers; }

    //! Mark an id as confirmed from the start (synthetic ancestors).
    void SeedConfirmed(uint32_t tx_index);

    TxState StateOf(uint32_t tx_index) const
    {
        return tx_index < m_state.size() ? m_state[tx_index] : TxState::NONE;
    }

    bool IsPunished(uint16_t peer, int64_t now_us) const;
    void Punish(uint16_t peer, int64_t now_us);

    void SetMinFeeRate(double rate) { m_min_fee_rate = rate; }
    double MinFeeRate() const { return m_min_fee_rate; }

    OrphanPool& Pool() { return m_pool; }
    const OrphanPool& Pool() const { return m_pool; }
    uint16_t Id() const { return m_config.id; }
    uint64_t MempoolSize() const { return m_mempool_size; }
    uint64_t ConfirmedCount() const { return m_confirmed_count; }
    uint32_t LastBlockHeight() const { return m_last_height; }

private:
    // OrphanPool::Listener; keeps the state array in lockstep with the pool.
    void OrphanAdded(int64_t now_us, const TxId& id, uint16_t from_peer) override;
    void OrphanErased(int64_t now_us, const TxId& id, uint16_t from_peer, RemovalCause cause) override;

    void EnsureStateSize(size_t n);
    void AcceptToMempool(uint32_t tx_index, uint16_t skip_peer, std::vector<Outgoing>& out);
    bool ParentAvailable(const TxId& parent) const;

    NodeConfig m_config;
    TxCatalog& m_catalog;
    NodeObserver* m_observer;
    OrphanPool m_pool;
    double m_min_fee_rate;

    std::vector<TxState> m_state;
    std::vector<uint16_t> m_requested_from;
    std::set<uint16_t> m_peers;
    std::map<uint16_t, int64_t> m_punished_until;

    uint64_t m_mempool_size{0};
    uint64_t m_confirmed_count{0};
    uint32_t m_last_height{0};
};

} // namespace orphansim

#endif // ORPHANSIM_NODE_HPP
