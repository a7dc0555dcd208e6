// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "latham/galerkin.hpp"
#include "latham/spectrum.hpp"

namespace latham {

/// All eigenpairs of the symmetric-definite pencil (H, S).
struct DenseSpectrum {
    Eigen::VectorXd eigenvalues;   ///< ascending
    Eigen::MatrixXd eigenvectors;  ///< S-orthonormal columns; empty unless requested
};

/// Dense generalized solver by Cholesky reduction of S. Refuses above the
/// size cap and when S is not positive definite.
DenseSpectrum solve_box_dense(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S,
                              bool want_vectors = true, Index cap = kDefaultDenseCap);

/// Linear combination of two same-shape assembled operators (dense payloads
/// for box, generating blocks plus separable metadata for periodic). Used to
/// form the core Hamiltonian H = 1/2 Laplace - Nuclear.
AssembledOperator combine(double wa, const AssembledOperator& a, double wb,
                          const AssembledOperator& b);

/// Periodic pencil solver: block-diagonalize H and S by FFT and solve the
/// m0 x m0 Hermitian-definite pencil per k-point. `threads` parallelizes over
/// k-points; results are merged in k order.
KPointSpectrum solve_periodic(const GeneratingBlockTensor& Hgen,
                              const GeneratingBlockTensor& Sgen, bool want_vectors = false,
                              Index threads = 1);
KPointSpectrum solve_periodic(const AssembledOperator& H, const AssembledOperator& S,
                              bool want_vectors = false, Index threads = 1);

/// Same spectrum through the separable-coefficient fast path (1D FFTs only in
/// the transform stage). Requires rank metadata on both operators; the
/// metadata is validated against the generating blocks and a residual above
/// `metadata_tol` is a structure error, never a silent fallback.
KPointSpectrum solve_periodic_factorized(const AssembledOperator& H, const AssembledOperator& S,
                                         bool want_vectors = false, Index threads = 1,
                                         double metadata_tol = 1e-10);

/// Full-space coefficient vectors U_{j,m} = (F* x I) Ubar_{j,m} for every
/// k-point and band, as columns ordered (j, m) lexicographically.
Eigen::MatrixXcd reconstruct_eigenvectors(const KPointSpectrum& spec, Index cap = 4096);

/// Regroup per-k eigenvalues into m0 bands with their edges.
BandStructure spectral_bands(const KPointSpectrum& spec);

/// E = (sum of the lowest n_occ * cells eigenvalues) / cells.
double average_energy_per_cell(const Eigen::VectorXd& sorted_eigenvalues, Index cells,
                               Index n_occ);

}  // namespace latham
