// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_RANDOM_HPP
#define ORPHANSIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace orphansim {

//! One splitmix64 step. Used to derive decorrelated per-subsystem seeds from
//! a single master seed so that streams stay independent across runs.
inline uint64_t SplitMix64(uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t master, uint64_t stream)
{
    return SplitMix64(SplitMix64(master) ^ SplitMix64(stream * 0xd6e8feb86659fd93ULL + 1));
}

/**
 * Deterministic random source. All sampling goes through hand-rolled
 * transforms on top of mt19937_64 raw output; the standard distribution
 * adapters are avoided because their draw sequences differ between standard
 * library implementations and byte-identical replay is a hard requirement.
 */
class Rng
{
public:
    explicit Rng(uint64_t seed) : m_engine(SplitMix64(seed) ^ 0x5851f42d4c957f2dULL) {}

    uint64_t NextU64() { return m_engine(); }

    //! Uniform integer in [0, n). n must be nonzero. Rejection sampling keeps
    //! the result exactly uniform.
    uint64_t RandRange(uint64_t n)
    {
        const uint64_t threshold = (0 - n) % n;
        for (;;) {
            const uint64_t r = NextU64();
            if (r >= threshold) return r % n;
        }
    }

    //! Uniform double in [0, 1) with 53 random bits.
    double NextDouble()
    {
        return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
    }

    //! Standard normal via the Marsaglia polar method; caches the spare
    //! deviate so consecutive calls consume a predictable number of draws.
    double NextNormal();

private:
    std::mt19937_64 m_engine;
    double m_spare{0.0};
    bool m_has_spare{false};
};

} // namespace orphansim

#endif // ORPHANSIM_RANDOM_HPP
