// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "latham/block_circulant.hpp"

namespace latham {

/// One separable term of a coefficient tensor: the generating blocks factor
/// entrywise across levels, A_k = A^(1)_{k1} o A^(2)_{k2} o A^(3)_{k3}
/// (o = Hadamard product). level_blocks[l] holds the L_l blocks of level l.
struct SeparableTerm {
    std::array<std::vector<Eigen::MatrixXd>, 3> level_blocks;
};

/// Block diagonalization of a circulant whose coefficient tensor is a sum of
/// separable terms (canonical coefficient rank r). Construction applies only
/// 1D FFTs of the per-level block sequences, O(r m0^2 sum_l L_l log L_l);
/// diagonal blocks are then assembled per k-point by entrywise products,
/// A_bar_j = sum_t Fhat^(1,t)_{j1} o Fhat^(2,t)_{j2} o Fhat^(3,t)_{j3}.
class FactorizedDiagonalizer {
public:
    FactorizedDiagonalizer(int levels, std::array<Index, 3> dims, Index m0,
                           std::vector<SeparableTerm> terms);

    int levels() const { return levels_; }
    const std::array<Index, 3>& dims() const { return dims_; }
    Index block_size() const { return m0_; }
    Index term_count() const { return static_cast<Index>(transformed_.size()); }
    Index k_count() const { return dims_[0] * dims_[1] * dims_[2]; }

    /// Diagonal block at lexicographic k-point index.
    Eigen::MatrixXcd block(Index j_lin) const;

    /// All diagonal blocks; equals bc_block_diagonalize of the expanded
    /// generating tensor.
    BlockDiagonalForm to_block_diagonal() const;

    /// Expanded generating tensor sum_t A^(1,t) o A^(2,t) o A^(3,t)
    /// (validation / oracle use; dense over the k range).
    GeneratingBlockTensor expand() const;

private:
    int levels_ = 1;
    std::array<Index, 3> dims_{1, 1, 1};
    Index m0_ = 0;
    std::vector<SeparableTerm> terms_;  // kept for expand()
    // transformed_[t][l][j]: 1D-DFT of term t, level l, frequency j
    std::vector<std::array<std::vector<Eigen::MatrixXcd>, 3>> transformed_;
};

/// One-call form of the factorized path.
BlockDiagonalForm factorized_block_diagonalize(int levels, std::array<Index, 3> dims, Index m0,
                                               std::vector<SeparableTerm> terms);

}  // namespace latham
