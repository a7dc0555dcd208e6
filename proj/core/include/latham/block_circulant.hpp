// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>
#include <vector>

#include "latham/spectrum.hpp"

namespace latham {

/// L1 x ... x Ld tensor of m0 x m0 blocks, stored sparsely (unset blocks are
/// zero). Parametrizes a d-level block circulant matrix by its first block
/// column, or a d-level symmetric block Toeplitz matrix by its generating
/// slices. Levels beyond d have extent 1.
class GeneratingBlockTensor {
public:
    GeneratingBlockTensor() = default;
    GeneratingBlockTensor(int levels, std::array<Index, 3> dims, Index m0);

    int levels() const { return levels_; }
    const std::array<Index, 3>& dims() const { return dims_; }
    Index block_size() const { return m0_; }
    Index lattice_count() const { return dims_[0] * dims_[1] * dims_[2]; }
    Index matrix_size() const { return lattice_count() * m0_; }

    void set_block(const std::array<Index, 3>& k, Eigen::MatrixXd block);
    /// nullptr when the block is zero / unset.
    const Eigen::MatrixXd* block(const std::array<Index, 3>& k) const;
    Eigen::MatrixXd block_or_zero(const std::array<Index, 3>& k) const;

    Index stored_count() const { return static_cast<Index>(blocks_.size()); }
    const std::map<std::array<Index, 3>, Eigen::MatrixXd>& stored() const { return blocks_; }

    /// Circulant symmetry A_0 = A_0^T, A_k^T = A_{L-k} (indices modulo L per
    /// level), within absolute tolerance tol.
    bool is_symmetric_circulant(double tol = 1e-12) const;

private:
    void check_index(const std::array<Index, 3>& k) const;

    int levels_ = 1;
    std::array<Index, 3> dims_{1, 1, 1};
    Index m0_ = 0;
    std::map<std::array<Index, 3>, Eigen::MatrixXd> blocks_;
};

/// d-level block circulant matrix, represented only by its generating tensor.
struct BlockCirculant {
    GeneratingBlockTensor gen;
    Index size() const { return gen.matrix_size(); }
};

/// d-level symmetric block Toeplitz matrix: block (i, j) is gen[|i-j|]
/// transposed when the number of negative components of i-j is odd.
struct SymBlockToeplitz {
    GeneratingBlockTensor gen;
    Index size() const { return gen.matrix_size(); }
};

/// Diagonal blocks of the Fourier-transformed circulant: one complex m0 x m0
/// block per k-point j, A_bar_j = sum_k omega^{<j,k>} A_k with
/// omega_L = exp(-2 pi i / L) per level (unnormalized sums; the reconstruction
/// identity uses the unitary DFT pair).
struct BlockDiagonalForm {
    int levels = 1;
    std::array<Index, 3> dims{1, 1, 1};
    Index m0 = 0;
    std::vector<Eigen::MatrixXcd> blocks;  ///< lexicographic over k-points

    Index k_count() const { return dims[0] * dims[1] * dims[2]; }
};

inline constexpr Index kDefaultDenseCap = 4096;

/// Unitary DFT matrix with entries omega^{jk} / sqrt(L), omega = exp(-2 pi i/L).
Eigen::MatrixXcd unitary_dft(Index L);

Eigen::MatrixXd bc_to_dense(const BlockCirculant& A, Index cap = kDefaultDenseCap);
Eigen::MatrixXd toeplitz_to_dense(const SymBlockToeplitz& T, Index cap = kDefaultDenseCap);

/// FFT of the generating tensor along each level, entrywise over block
/// positions.
BlockDiagonalForm bc_block_diagonalize(const BlockCirculant& A);

/// Reassemble the dense matrix (F* x I) bdiag (F x I) from the diagonal
/// blocks; inverse of bc_block_diagonalize up to round-off.
Eigen::MatrixXd bc_reconstruct_dense(const BlockDiagonalForm& bd, Index cap = kDefaultDenseCap);

/// Eigen-decomposition via the block-diagonal form: the spectrum of A is the
/// union over j of spec(A_bar_j). With `symmetric` set the generating tensor
/// must satisfy the circulant symmetry and each block is solved as Hermitian.
/// Eigenvectors, when requested, are the per-block vectors u_{j,m}; full-space
/// vectors can be reconstructed with bc_full_eigenvector.
KPointSpectrum bc_eigensolve(const BlockCirculant& A, bool symmetric,
                             bool want_vectors = false);

/// U_{j,m} = (F* x I) applied to the vector holding u in block slot j.
Eigen::VectorXcd bc_full_eigenvector(const KPointSpectrum& spec, Index j_lin, Index m);

/// Matrix-vector product through the Fourier representation,
/// cost O(m0^2 PiL + m0 PiL sum log L).
Eigen::VectorXd bc_matvec(const BlockCirculant& A, const Eigen::VectorXd& x);

/// Embed into the double-size (per level) block circulant whose leading
/// principal block submatrix equals T; padding slot L is the zero block.
BlockCirculant toeplitz_embed(const SymBlockToeplitz& T);

/// Toeplitz matvec by circulant embedding: pad per level, multiply, truncate.
Eigen::VectorXd toeplitz_matvec(const SymBlockToeplitz& T, const Eigen::VectorXd& x);

}  // namespace latham
