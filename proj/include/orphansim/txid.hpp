// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_TXID_HPP
#define ORPHANSIM_TXID_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>

namespace orphansim {

class Rng;

//! 32-byte transaction identifier, rendered as 64 lowercase hex characters.
struct TxId {
    std::array<unsigned char, 32> bytes{};

    auto operator<=>(const TxId&) const = default;

    std::string ToHex() const;
    static std::optional<TxId> FromHex(std::string_view hex);
};

//! Identifiers are already uniform random bytes, so the first word is a
//! perfectly good hash.
struct TxIdHasher {
    size_t operator()(const TxId& id) const
    {
        uint64_t w;
        std::memcpy(&w, id.bytes.data(), sizeof(w));
        return static_cast<size_t>(w);
    }
};

TxId RandomTxId(Rng& rng);

} // namespace orphansim

#endif // ORPHANSIM_TXID_HPP
