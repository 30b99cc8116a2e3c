// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/txid.hpp>

#include <orphansim/random.hpp>

namespace orphansim {

namespace {
constexpr char HEX_DIGITS[] = "0123456789abcdef";

int HexValue(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
} // namespace

std::string TxId::ToHex() const
{
    std::string out;
    out.resize(64);
    for (size_t i = 0; i < bytes.size(); ++i) {
        out[2 * i] = HEX_DIGITS[bytes[i] >> 4];
        out[2 * i + 1] = HEX_DIGITS[bytes[i] & 0x0f];
    }
    return out;
}

std::optional<TxId> TxId::FromHex(std::string_view hex)
{
    if (hex.size() != 64) return std::nullopt;
    TxId id;
    for (size_t i = 0; i < id.bytes.size(); ++i) {
        const int hi = HexValue(hex[2 * i]);
        const int lo = HexValue(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        id.bytes[i] = static_cast<unsigned char>((hi << 4) | lo);
    }
    return id;
}

TxId RandomTxId(Rng& rng)
{
    TxId id;
    for (size_t i = 0; i < id.bytes.size(); i += 8) {
        const uint64_t w = rng.NextU64();
        std::memcpy(id.bytes.data() + i, &w, 8);
    }
    return id;
}

} // namespace orphansim
