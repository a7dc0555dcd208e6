// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "latham/galerkin.hpp"

namespace latham::cli {

/// Thrown on malformed or inconsistent configuration; mapped to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Boundary { Box, Periodic, Both };

/// Fully resolved experiment description, parsed from a flat key/value file
/// with dotted section names. `nucleus` and `basis` lines repeat, one entity
/// per line.
struct ExperimentConfig {
    double b = 8.0;
    Index n = 8;
    Index nbar = 8;
    Index n0 = 8;
    Index quad_M = 20;
    std::array<Index, 3> L{1, 1, 1};
    Boundary boundary = Boundary::Both;
    NucleiSet nuclei;
    GtoBasis basis;
    double eps_ov = 1e-8;
    Index n_occ = 1;
    Index threads = 1;

    Index cap_dense = kDefaultDenseCap;
    Index cap_materialize = kDefaultMaterializeCap;
    bool cap_acknowledge = false;

    bool solve_eigenvectors = false;
    std::vector<Index> bench_L;
    std::vector<Index> energy_L;

    /// Resolved key/value view, embedded as provenance header in outputs.
    std::vector<std::pair<std::string, std::string>> resolved;

    LatticeSystem system(const std::array<Index, 3>& L_override) const;
    LatticeSystem system() const { return system(L); }
};

ExperimentConfig parse_config_file(const std::string& path);

}  // namespace latham::cli
