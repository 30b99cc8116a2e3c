// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/node.hpp>

#include <orphansim/error.hpp>

#include <algorithm>
#include <deque>

namespace orphansim {

Node::Node(const NodeConfig& config, TxCatalog& catalog, NodeObserver* observer)
    : m_config(config),
      m_catalog(catalog),
      m_observer(observer),
      m_pool(config.pool, this),
      m_min_fee_rate(config.min_fee_rate)
{
}

void Node::EnsureStateSize(size_t n)
{
    if (m_state.size() < n) {
        m_state.resize(n, TxState::NONE);
        m_requested_from.resize(n, 0);
    }
}

void Node::OrphanAdded(int64_t now_us, const TxId& id, uint16_t from_peer)
{
    const uint32_t index = m_catalog.Find(id);
    EnsureStateSize(static_cast<size_t>(index) + 1);
    m_state[index] = TxState::IN_ORPHAN_POOL;
    if (m_observer) m_observer->OnOrphanAdd(m_config.id, now_us, id, from_peer);
}

void Node::OrphanErased(int64_t now_us, const TxId& id, uint16_t from_peer, RemovalCause cause)
{
    const uint32_t index = m_catalog.Find(id);
    m_state[index] = TxState::NONE;
    if (m_observer) m_observer->OnOrphanErase(m_config.id, now_us, id, from_peer, cause);
}

bool Node::ParentAvailable(const TxId& parent) const
{
    const uint32_t index = m_catalog.Find(parent);
    if (index == TxCatalog::INVALID_INDEX) return false;
    const TxState st = StateOf(index);
    return st == TxState::IN_MEMPOOL || st == TxState::CONFIRMED;
}

ValidationResult Node::ValidateTx(const Transaction& tx) const
{
    ValidationResult result;
    if (!tx.standard) {
        result.kind = ValidationResult::Kind::INVALID_NONSTANDARD;
        return result;
    }
    if (FeePerByte(tx) < m_min_fee_rate) {
        result.kind = ValidationResult::Kind::INVALID_LOW_FEE;
        return result;
    }
    for (const TxId& parent : tx.parents) {
        if (ParentAvailable(parent)) continue;
        if (std::find(result.missing_parents.begin(), result.missing_parents.end(), parent) ==
            result.missing_parents.end()) {
            result.missing_parents.push_back(parent);
        }
    }
    if (!result.missing_parents.empty()) result.kind = ValidationResult::Kind::ORPHAN;
    return result;
}

void Node::AcceptToMempool(uint32_t tx_index, uint16_t skip_peer, std::vector<Outgoing>& out)
{
    EnsureStateSize(static_cast<size_t>(tx_index) + 1);
    m_state[tx_index] = TxState::IN_MEMPOOL;
    ++m_mempool_size;
    for (const uint16_t peer : m_peers) {
        if (peer == skip_peer) continue;
        out.push_back({peer, WireKind::INV, tx_index});
    }
}

void Node::HandleTx(const Transaction& tx, uint16_t from_peer, int64_t now_us, std::vector<Outgoing>& out)
{
    if (IsPunished(from_peer, now_us)) return;

    const uint32_t index = m_catalog.InternTx(tx);
    EnsureStateSize(static_cast<size_t>(index) + 1);

    const TxState st = m_state[index];
    if (st == TxState::IN_MEMPOOL || st == TxState::CONFIRMED || st == TxState::IN_ORPHAN_POOL) {
        return;
    }
    if (st == TxState::REQUESTED) {
        m_state[index] = TxState::NONE;
        m_requested_from[index] = 0;
    }

    const ValidationResult vr = ValidateTx(tx);
    switch (vr.kind) {
    case ValidationResult::Kind::VALID: {
        AcceptToMempool(index, from_peer, out);
        ProcessResolvedOrphans(tx.id, now_us, out);
        return;
    }
    case ValidationResult::Kind::ORPHAN: {
        if (m_pool.AddOrphan(tx, from_peer, now_us) != AddResult::ADDED) return;
        if (m_observer) m_observer->OnMissingParents(m_config.id, now_us, vr.missing_parents);
        // Only the announcing peer is known to have the parents; request them
        // there. Parents of self-injected transactions arrive via relay.
        if (from_peer == m_config.id) return;
        for (const TxId& parent : vr.missing_parents) {
            const uint32_t parent_index = m_catalog.InternId(parent);
            EnsureStateSize(static_cast<size_t>(parent_index) + 1);
            if (m_state[parent_index] == TxState::NONE) {
                m_state[parent_index] = TxState::REQUESTED;
                m_requested_from[parent_index] = from_peer;
                out.push_back({from_peer, WireKind::GETDATA, parent_index});
            }
        }
        return;
    }
    case ValidationResult::Kind::INVALID_NONSTANDARD:
    case ValidationResult::Kind::INVALID_LOW_FEE:
        // Freshly delivered invalid transactions are dropped without blame;
        // punishment is reserved for orphans that fail once resolvable.
        return;
    }
}

std::vector<TxId> Node::ProcessResolvedOrphans(const TxId& accepted, int64_t now_us, std::vector<Outgoing>& out)
{
    std::vector<TxId> newly_accepted;
    std::deque<TxId> work{accepted};
    while (!work.empty()) {
        const TxId parent = work.front();
        work.pop_front();
        for (const TxId& id : m_pool.OrphansSpending(parent)) {
            const OrphanEntry* entry = m_pool.Get(id);
            if (!entry) continue;
            const ValidationResult vr = ValidateTx(entry->tx);
            if (vr.IsOrphan()) continue;

            const uint16_t source = entry->from_peer;
            if (vr.IsValid()) {
                const uint32_t index = m_catalog.Find(id);
                m_pool.EraseOrphan(id, RemovalCause::PARENTS_RECEIVED, now_us);
                AcceptToMempool(index, source, out);
                newly_accepted.push_back(id);
                work.push_back(id);
            } else {
                Punish(source, now_us);
                m_pool.EraseOrphan(id, RemovalCause::INVALID, now_us);
            }
        }
    }
    return newly_accepted;
}

void Node::HandleBlock(const Block& block, int64_t now_us, std::vector<Outgoing>& out)
{
    if (block.height != m_last_height + 1) {
        throw SimError("non-consecutive block height " + std::to_string(block.height) +
                       " after " + std::to_string(m_last_height));
    }
    m_last_height = block.height;

    for (const uint32_t index : block.txs) {
        EnsureStateSize(static_cast<size_t>(index) + 1);
        const TxState st = m_state[index];
        if (st == TxState::IN_ORPHAN_POOL) {
            m_pool.EraseOrphan(m_catalog.Id(index), RemovalCause::PARENTS_IN_BLOCK, now_us);
        } else if (st == TxState::IN_MEMPOOL) {
            --m_mempool_size;
        }
        if (st != TxState::CONFIRMED) ++m_confirmed_count;
        m_state[index] = TxState::CONFIRMED;
    }
    for (const uint32_t index : block.txs) {
        ProcessResolvedOrphans(m_catalog.Id(index), now_us, out);
    }
}

void Node::HandleInvIndex(uint32_t tx_index, uint16_t from_peer, std::vector<Outgoing>& out)
{
    EnsureStateSize(static_cast<size_t>(tx_index) + 1);
    if (m_state[tx_index] != TxState::NONE) return;
    m_state[tx_index] = TxState::REQUESTED;
    m_requested_from[tx_index] = from_peer;
    out.push_back({from_peer, WireKind::GETDATA, tx_index});
}

void Node::HandleInv(std::span<const TxId> ids, uint16_t from_peer, std::vector<Outgoing>& out)
{
    for (const TxId& id : ids) HandleInvIndex(m_catalog.InternId(id), from_peer, out);
}

void Node::HandleGetDataIndex(uint32_t tx_index, uint16_t from_peer, std::vector<Outgoing>& out)
{
    const TxState st = StateOf(tx_index);
    if (st != TxState::IN_MEMPOOL && st != TxState::CONFIRMED) return;
    out.push_back({from_peer, WireKind::TX, tx_index});
}

void Node::HandleGetData(std::span<const TxId> ids, uint16_t from_peer, std::vector<Outgoing>& out)
{
    for (const TxId& id : ids) {
        const uint32_t index = m_catalog.Find(id);
        if (index == TxCatalog::INVALID_INDEX) continue;
        HandleGetDataIndex(index, from_peer, out);
    }
}

size_t Node::OnPeerDisconnect(uint16_t peer, int64_t now_us)
{
    m_peers.erase(peer);
    m_punished_until.erase(peer);
    const size_t purged = m_pool.EraseForPeer(peer, now_us);
    for (size_t i = 0; i < m_state.size(); ++i) {
        if (m_state[i] == TxState::REQUESTED && m_requested_from[i] == peer) {
            m_state[i] = TxState::NONE;
            m_requested_from[i] = 0;
        }
    }
    return purged;
}

void Node::OnPeerConnect(uint16_t peer)
{
    m_peers.insert(peer);
    m_punished_until.erase(peer);
}

void Node::SeedConfirmed(uint32_t tx_index)
{
    EnsureStateSize(static_cast<size_t>(tx_index) + 1);
    m_state[tx_index] = TxState::CONFIRMED;
}

bool Node::IsPunished(uint16_t peer, int64_t now_us) const
{
    const auto it = m_punished_until.find(peer);
    return it != m_punished_until.end() && now_us < it->second;
}

void Node::Punish(uint16_t peer, int64_t now_us)
{
    m_punished_until[peer] = now_us + m_config.punishment_us;
}

} // namespace orphansim
