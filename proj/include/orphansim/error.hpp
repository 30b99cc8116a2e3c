// Copyright (c) 2026 The OrphanSim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ORPHANSIM_ERROR_HPP
#define ORPHANSIM_ERROR_HPP

#include <stdexcept>

namespace orphansim {

//! Bad scenario, workload or distribution input. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Violated runtime precondition (non-consecutive block heights, audit
//! integrity, ...). CLI exit code 2.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Artifact produced by an incompatible schema version. CLI exit code 3.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace orphansim

#endif // ORPHANSIM_ERROR_HPP
