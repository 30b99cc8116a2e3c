// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_TIME_UNITS_HPP
#define ORPHANSIM_TIME_UNITS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace orphansim {

//! All simulation clocks are integer microseconds since run start.
inline constexpr int64_t MICROS_PER_SECOND = 1'000'000;

inline int64_t SecondsToMicros(double seconds)
{
    return static_cast<int64_t>(std::llround(seconds * static_cast<double>(MICROS_PER_SECOND)));
}

inline constexpr int64_t SecondsToMicros(int64_t seconds)
{
    return seconds * MICROS_PER_SECOND;
}

inline constexpr int64_t MinutesToMicros(int64_t minutes)
{
    return minutes * 60 * MICROS_PER_SECOND;
}

inline double MicrosToSeconds(int64_t micros)
{
    return static_cast<double>(micros) / static_cast<double>(MICROS_PER_SECOND);
}

//! Fixed six-decimal rendering so serialized timestamps never depend on
//! floating point formatting.
inline std::string FormatSeconds(int64_t micros)
{
    const char* sign = micros < 0 ? "-" : "";
    const uint64_t mag = micros < 0 ? static_cast<uint64_t>(-(micros + 1)) + 1 : static_cast<uint64_t>(micros);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s%llu.%06llu", sign,
                  static_cast<unsigned long long>(mag / MICROS_PER_SECOND),
                  static_cast<unsigned long long>(mag % MICROS_PER_SECOND));
    return std::string(buf);
}

} // namespace orphansim

#endif // ORPHANSIM_TIME_UNITS_HPP
