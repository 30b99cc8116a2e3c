// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_CATALOG_HPP
#define ORPHANSIM_CATALOG_HPP

#include <orphansim/transaction.hpp>
#include <orphansim/workload.hpp>

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace orphansim {

/**
 * Interns every transaction id seen during a run into a dense uint32 index
 * so per-node bookkeeping can live in flat arrays instead of hash maps.
 * Slots may exist id-only (a parent referenced before its data arrived).
 */
class TxCatalog
{
public:
    static constexpr uint32_t INVALID_INDEX = UINT32_MAX;

    //! Index for an id, creating a data-less slot when new.
    uint32_t InternId(const TxId& id);
    //! Index for a full transaction; fills the slot's payload on first call.
    uint32_t InternTx(const Transaction& tx);
    //! INVALID_INDEX when the id has never been interned.
    uint32_t Find(const TxId& id) const;

    const TxId& Id(uint32_t index) const { return m_ids[index]; }
    //! nullptr while the slot is id-only.
    const Transaction* Get(uint32_t index) const
    {
        return m_has_data[index] ? &m_txs[index] : nullptr;
    }
    std::span<const uint32_t> ParentIndices(uint32_t index) const
    {
        return m_parents[index];
    }
    size_t Count() const { return m_ids.size(); }

    //! Interns preconfirmed ids first, then every transaction in order, so
    //! index order is topological: a parent's index is below its child's.
    void LoadWorkload(const Workload& workload);

private:
    std::unordered_map<TxId, uint32_t, TxIdHasher> m_index;
    std::vector<TxId> m_ids;
    std::vector<Transaction> m_txs;
    std::vector<uint8_t> m_has_data;
    std::vector<std::vector<uint32_t>> m_parents;
};

} // namespace orphansim

#endif // ORPHANSIM_CATALOG_HPP
