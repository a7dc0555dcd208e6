// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "latham/canonical_tensor.hpp"
#include "latham/sinc_quadrature.hpp"

namespace latham {

/// Point charge at a cell-local position (coordinates relative to the cell
/// center, inside [-b/2, b/2]^3).
struct Nucleus {
    std::array<double, 3> position{0.0, 0.0, 0.0};
    double charge = 1.0;
};

/// Nuclei of one unit cell of size b.
struct NucleiSet {
    double cell_size = 0.0;  ///< b
    std::vector<Nucleus> nuclei;

    Index count() const { return static_cast<Index>(nuclei.size()); }
    /// Throws unless every charge is positive and every position is inside
    /// the cell.
    void validate() const;
};

/// Canonical tensor of the kernel 1/|x| collocated on the given grids:
/// factor column q in direction l holds the exact 1D Gaussian cell integrals
/// int_cell exp(-t_q^2 x^2) dx (erf differences), term weight w_q. Entry (i,j,k)
/// of the represented tensor approximates the integral of 1/|x| over cell
/// (i,j,k). Grids must be origin-centered cell grids.
CanonicalTensor3 newton_master_tensor(const std::array<Grid1D, 3>& grids,
                                      const SincQuadrature& quad);

/// Master grids for a single unit cell: n + 2*n0 cells per direction
/// (n0 >= n/2 so that any in-cell nucleus window fits).
std::array<Grid1D, 3> master_grids_unit(Index n, double h, Index n0);

/// Master grids large enough for every shifted window of an
/// L1 x L2 x L3 box supercell whose grid is widened by margin_cells unit
/// cells on each side.
std::array<Grid1D, 3> master_grids_box(Index n, double h, const std::array<Index, 3>& L,
                                       Index margin_cells = 0);

/// Master grids large enough for the periodic central-cell accumulation.
std::array<Grid1D, 3> master_grids_periodic(Index n, double h, const std::array<Index, 3>& L);

/// Single-nucleus potential on the n-grid of the unit cell: the Z-scaled
/// window of the master at the offset encoding the (grid-snapped) nucleus
/// position. `snap_distance`, when given, receives the largest per-direction
/// snapping error in length units.
CanonicalTensor3 nucleus_tensor(const CanonicalTensor3& master, const Nucleus& nucleus,
                                Index n, double h, double* snap_distance = nullptr);

/// Potential of all M0 * L1*L2*L3 nucleus copies over the N_L = n*L supercell
/// grid, assembled per direction so the rank stays M0 * R. A positive
/// margin_cells widens the output window by that many unit cells per side
/// (the Galerkin layer integrates basis tails there).
CanonicalTensor3 lattice_potential_box(const CanonicalTensor3& master, const NucleiSet& nuclei,
                                       const std::array<Index, 3>& L, Index n, double h,
                                       Index margin_cells = 0);

/// Translation-invariant potential of the periodic model: all lattice
/// contributions accumulated onto the central n^3 cell. Lattice offsets per
/// direction are the centered window -floor(L/2) .. L-1-floor(L/2).
CanonicalTensor3 lattice_potential_periodic_cell(const CanonicalTensor3& master,
                                                 const NucleiSet& nuclei,
                                                 const std::array<Index, 3>& L, Index n,
                                                 double h);

}  // namespace latham
