// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_TRANSACTION_HPP
#define ORPHANSIM_TRANSACTION_HPP

#include <orphansim/txid.hpp>

#include <cstdint>
#include <vector>

namespace orphansim {

//! Smallest transaction the generator will emit (coinbase-sized floor).
inline constexpr uint32_t MIN_TX_SIZE_BYTES = 85;

struct Transaction {
    TxId id;
    uint32_t size_bytes{MIN_TX_SIZE_BYTES};
    uint64_t fee_sat{0};
    std::vector<TxId> parents;
    bool standard{true};

    bool operator==(const Transaction&) const = default;
};

//! Satoshis per byte. size_bytes is always positive by construction.
inline double FeePerByte(const Transaction& tx)
{
    return static_cast<double>(tx.fee_sat) / static_cast<double>(tx.size_bytes);
}

} // namespace orphansim

#endif // ORPHANSIM_TRANSACTION_HPP
