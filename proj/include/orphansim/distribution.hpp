// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_DISTRIBUTION_HPP
#define ORPHANSIM_DISTRIBUTION_HPP

#include <cstdint>
#include <string>
#include <utility>

namespace orphansim {

class Rng;

/**
 * Convert a target arithmetic mean and standard deviation into log-normal
 * location/scale parameters:
 *
 *   scale^2 = ln(1 + (stddev/mean)^2),  location = ln(mean) - scale^2 / 2
 *
 * Throws ConfigError unless mean > 0 and stddev >= 0.
 */
std::pair<double, double> MomentMatchLogNormal(double mean, double stddev);

/**
 * A small closed set of sampling distributions used for fees, sizes,
 * latencies and fee policies. Log-normal specs are constructed from the
 * desired arithmetic mean/stddev and store the matched location/scale.
 */
class DistSpec
{
public:
    enum class Kind : uint8_t {
        CONSTANT,  //!< a = value
        UNIFORM,   //!< [a, b]
        LOGNORMAL, //!< a = location, b = scale
        EXPONENTIAL, //!< a = mean
    };

    DistSpec() : m_kind(Kind::CONSTANT), m_a(0.0), m_b(0.0) {}

    static DistSpec Constant(double value);
    static DistSpec Uniform(double lo, double hi);
    static DistSpec LogNormalMeanStd(double mean, double stddev);
    static DistSpec Exponential(double mean);

    double Sample(Rng& rng) const;
    //! Log-normal quantile transform of a standard normal deviate; the hook
    //! the workload generator uses to correlate two log-normal draws.
    double FromNormal(double z) const;

    Kind GetKind() const { return m_kind; }
    double ParamA() const { return m_a; }
    double ParamB() const { return m_b; }
    double Mean() const;

    std::string Describe() const;

private:
    DistSpec(Kind kind, double a, double b) : m_kind(kind), m_a(a), m_b(b) {}

    Kind m_kind;
    double m_a;
    double m_b;
};

} // namespace orphansim

#endif // ORPHANSIM_DISTRIBUTION_HPP
