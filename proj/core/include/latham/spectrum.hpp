// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "latham/grid.hpp"

namespace latham {

/// Eigenvalues (and optionally eigenvectors) of a block-structured operator,
/// grouped by lattice momentum index j. k-points are stored lexicographically
/// over the level dimensions; eigenvalues within one k-point are ascending.
struct KPointSpectrum {
    std::array<Index, 3> dims{1, 1, 1};  ///< L1, L2, L3 (unused levels = 1)
    Index m0 = 0;                        ///< block size = eigenvalues per k-point
    std::string solver_path;             ///< which solver produced this

    std::vector<Eigen::VectorXd> eigenvalues;    ///< per k-point, length m0
    std::vector<Eigen::MatrixXcd> eigenvectors;  ///< per k-point, m0 x m0 (cols u_{j,m}); may be empty

    Index k_count() const { return dims[0] * dims[1] * dims[2]; }
    bool has_vectors() const { return !eigenvectors.empty(); }

    std::array<Index, 3> k_multi(Index lin) const {
        return {lin / (dims[1] * dims[2]), (lin / dims[2]) % dims[1], lin % dims[2]};
    }

    /// All eigenvalues as one ascending-sorted vector.
    Eigen::VectorXd sorted_all() const {
        Eigen::VectorXd out(k_count() * m0);
        Index at = 0;
        for (const auto& ev : eigenvalues)
            for (Index m = 0; m < ev.size(); ++m) out[at++] = ev[m];
        std::sort(out.data(), out.data() + out.size());
        return out;
    }
};

/// Spectral bands: the m-th eigenvalues across all k-points form band m.
struct BandStructure {
    Index m0 = 0;
    std::vector<Eigen::VectorXd> bands;  ///< m0 bands, each of length k_count
    Eigen::VectorXd band_min;            ///< lower band edges
    Eigen::VectorXd band_max;            ///< upper band edges
};

}  // namespace latham
