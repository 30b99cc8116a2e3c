// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_VERSION_HPP
#define ORPHANSIM_VERSION_HPP

namespace orphansim {

inline constexpr char TOOL_VERSION[] = "0.1.0";

} // namespace orphansim

#endif // ORPHANSIM_VERSION_HPP
