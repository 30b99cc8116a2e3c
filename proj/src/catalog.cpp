// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/catalog.hpp>

namespace orphansim {

uint32_t TxCatalog::InternId(const TxId& id)
{
    const auto [it, inserted] = m_index.try_emplace(id, static_cast<uint32_t>(m_ids.size()));
    if (inserted) {
        m_ids.push_back(id);
        m_txs.emplace_back();
        m_has_data.push_back(0);
        m_parents.emplace_back();
    }
    return it->second;
}

uint32_t TxCatalog::InternTx(const Transaction& tx)
{
    const uint32_t index = InternId(tx.id);
    if (!m_has_data[index]) {
        std::vector<uint32_t> parents;
        parents.reserve(tx.parents.size());
        for (const TxId& p : tx.parents) parents.push_back(InternId(p));
        m_txs[index] = tx;
        m_has_data[index] = 1;
        m_parents[index] = std::move(parents);
    }
    return index;
}

uint32_t TxCatalog::Find(const TxId& id) const
{
    const auto it = m_index.find(id);
    return it == m_index.end() ? INVALID_INDEX : it->second;
}

void TxCatalog::LoadWorkload(const Workload& workload)
{
    for (const TxId& id : workload.preconfirmed) InternId(id);
    for (const Transaction& tx : workload.txs) InternTx(tx);
}

} // namespace orphansim
