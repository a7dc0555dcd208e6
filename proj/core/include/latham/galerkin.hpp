// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "latham/factorized_diag.hpp"
#include "latham/fem1d.hpp"
#include "latham/gto_basis.hpp"
#include "latham/newton_kernel.hpp"

namespace latham {

/// Geometry and discretization of one lattice-structured system: an
/// L1 x L2 x L3 replication of a unit cell of size b holding `nuclei` and
/// `basis`, with an n-grid (piecewise constant, potential part) and an
/// nbar-grid (piecewise linear, kinetic/overlap part) per cell.
struct LatticeSystem {
    double b = 0.0;
    std::array<Index, 3> L{1, 1, 1};
    Index n = 0;
    Index nbar = 0;
    Index quad_M = 20;   ///< sinc half-count; kernel rank R_N = 2M+1
    NucleiSet nuclei;
    GtoBasis basis;
    double eps_ov = 1e-8;

    double h() const { return b / static_cast<double>(n); }
    double hbar() const { return b / static_cast<double>(nbar); }
    Index m0() const { return basis.m0(); }
    Index lattice_count() const { return L[0] * L[1] * L[2]; }
    Index basis_count() const { return m0() * lattice_count(); }
    int levels() const { return 3; }

    void validate() const;
};

enum class OperatorKind { Laplace, Mass, Nuclear };

/// One assembled Galerkin operator. Box systems carry the dense block matrix;
/// periodic systems carry the circulant generating tensor plus the separable
/// per-level factor sequences (coefficient-rank metadata: 1 for mass, 3 for
/// the Laplacian, M0*R_N for the nuclear part).
struct AssembledOperator {
    OperatorKind which = OperatorKind::Mass;
    bool periodic = false;
    Index m0 = 0;
    std::array<Index, 3> L{1, 1, 1};

    Eigen::MatrixXd dense;                 ///< box payload
    GeneratingBlockTensor gen;             ///< periodic payload
    std::vector<SeparableTerm> separable;  ///< periodic rank metadata
    Index coefficient_rank = 0;
    Index overlap_L0 = 0;
};

/// Galerkin entry <A3 Gk, Gm> of the rank-3 Laplacian
/// A x S x S + S x A x S + S x S x A, evaluated by 1D forms only.
double laplace_block(const CanonicalTensor3& Gk, const CanonicalTensor3& Gm,
                     const std::array<Fem1D, 3>& fem);

/// Overlap entry <Gk, Gm>_S = prod_l <S^(l) gk, gm>.
double mass_block(const CanonicalTensor3& Gk, const CanonicalTensor3& Gm,
                  const std::array<Fem1D, 3>& fem);

/// Nuclear entry <Gk o Gm, P> by Hadamard product and canonical inner product.
double nuclear_block(const CanonicalTensor3& Gk, const CanonicalTensor3& Gm,
                     const CanonicalTensor3& pot);

/// Dense N_b x N_b operator for the box (open boundary) system.
AssembledOperator assemble_box(const LatticeSystem& sys, OperatorKind which);

/// Block circulant operator for the periodic system. Requires L_l > 2 L0 in
/// every direction so generating blocks cannot alias their wrap images.
AssembledOperator assemble_periodic(const LatticeSystem& sys, OperatorKind which);

/// Difference between the box nuclear matrix and the dense expansion of the
/// periodic circulant nuclear matrix, with its relative Frobenius norm.
struct DefectReport {
    Eigen::MatrixXd defect;
    double relative_fro = 0.0;
};
DefectReport box_circulant_defect(const LatticeSystem& sys);

/// Residual of the separable metadata against the stored generating blocks
/// (max abs entry difference of the reassembled tensor).
double separable_residual(const AssembledOperator& op);

}  // namespace latham
