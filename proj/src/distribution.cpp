// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <orphansim/distribution.hpp>

#include <orphansim/error.hpp>
#include <orphansim/random.hpp>

#include <cmath>
#include <cstdio>

namespace orphansim {

std::pair<double, double> MomentMatchLogNormal(double mean, double stddev)
{
    if (!(mean > 0.0)) throw ConfigError("log-normal mean must be positive");
    if (!(stddev >= 0.0)) throw ConfigError("log-normal stddev must be non-negative");
    const double ratio = stddev / mean;
    const double scale2 = std::log1p(ratio * ratio);
    const double location = std::log(mean) - scale2 / 2.0;
    return {location, std::sqrt(scale2)};
}

DistSpec DistSpec::Constant(double value)
{
    return DistSpec(Kind::CONSTANT, value, 0.0);
}

DistSpec DistSpec::Uniform(double lo, double hi)
{
    if (!(lo <= hi)) throw ConfigError("uniform distribution needs lo <= hi");
    return DistSpec(Kind::UNIFORM, lo, hi);
}

DistSpec DistSpec::LogNormalMeanStd(double mean, double stddev)
{
    const auto [location, scale] = MomentMatchLogNormal(mean, stddev);
    return DistSpec(Kind::LOGNORMAL, location, scale);
}

DistSpec DistSpec::Exponential(double mean)
{
    if (!(mean > 0.0)) throw ConfigError("exponential mean must be positive");
    return DistSpec(Kind::EXPONENTIAL, mean, 0.0);
}

double DistSpec::Sample(Rng& rng) const
{
    switch (m_kind) {
    case Kind::CONSTANT:
        return m_a;
    case Kind::UNIFORM:
        return m_a + (m_b - m_a) * rng.NextDouble();
    case Kind::LOGNORMAL:
        return FromNormal(rng.NextNormal());
    case Kind::EXPONENTIAL:
        return -m_a * std::log1p(-rng.NextDouble());
    }
    throw SimError("unreachable distribution kind");
}

double DistSpec::FromNormal(double z) const
{
    if (m_kind != Kind::LOGNORMAL) throw SimError("FromNormal requires a log-normal spec");
    return std::exp(m_a + m_b * z);
}

double DistSpec::Mean() const
{
    switch (m_kind) {
    case Kind::CONSTANT:
        return m_a;
    case Kind::UNIFORM:
        return (m_a + m_b) / 2.0;
    case Kind::LOGNORMAL:
        return std::exp(m_a + m_b * m_b / 2.0);
    case Kind::EXPONENTIAL:
        return m_a;
    }
    throw SimError("unreachable distribution kind");
}

std::string DistSpec::Describe() const
{
    char buf[96];
    switch (m_kind) {
    case Kind::CONSTANT:
        std::snprintf(buf, sizeof(buf), "constant(%g)", m_a);
        break;
    case Kind::UNIFORM:
        std::snprintf(buf, sizeof(buf), "uniform(%g, %g)", m_a, m_b);
        break;
    case Kind::LOGNORMAL:
        std::snprintf(buf, sizeof(buf), "lognormal(location=%g, scale=%g)", m_a, m_b);
        break;
    case Kind::EXPONENTIAL:
        std::snprintf(buf, sizeof(buf), "exponential(%g)", m_a);
        break;
    }
    return std::string(buf);
}

} // namespace orphansim
