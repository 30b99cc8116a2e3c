// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/random.hpp>

#include <cmath>

namespace orphansim {

double Rng::NextNormal()
{
    if (m_has_spare) {
        m_has_spare = false;
        return m_spare;
    }
    double u, v, s;
    do {
        u = 2.0 * NextDouble() - 1.0;
        v = 2.0 * NextDouble() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    m_spare = v * m;
    m_has_spare = true;
    return u * m;
}

} // namespace orphansim
