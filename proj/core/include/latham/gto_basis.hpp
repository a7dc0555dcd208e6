// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "latham/canonical_tensor.hpp"

namespace latham {

/// Separable Gaussian-type basis function
/// g(x) = prod_l (x_l - c_l)^{d_l} exp(-alpha (x_l - c_l)^2),
/// centered at a cell-local position c (relative to the cell center).
struct GtoFunction {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double exponent = 1.0;
    std::array<int, 3> degrees{0, 0, 0};

    double eval1d(int dir, double x) const;  ///< 1D factor at cell-local x
};

/// The m0 basis functions of one unit cell.
struct GtoBasis {
    std::vector<GtoFunction> functions;

    Index m0() const { return static_cast<Index>(functions.size()); }
    void validate() const;
};

/// 1D samples restricted to the index range [offset, offset + values.size())
/// of some enclosing grid; everything outside is zero.
struct Supported1D {
    Index offset = 0;
    Eigen::VectorXd values;

    Index end() const { return offset + values.size(); }
    Eigen::VectorXd to_full(Index n) const;  ///< zero-extended dense vector
};

/// Sample one 1D factor of `fn` on a uniform grid: entry i gets the factor
/// value at local coordinate (i - cell_index*per_cell + align)*step - b/2 -
/// center, i.e. the function sits in cell `cell_index` counted from the grid
/// start. `align` is 0.5 for cell midpoints and 0.0 for nodes. Entries below
/// eps in magnitude at both tails are trimmed off; the result is bitwise
/// shift-invariant in cell_index.
Supported1D sample_gto_1d(const GtoFunction& fn, int dir, Index grid_n, double step,
                          Index cell_index, Index per_cell, double b, double align,
                          double eps);

/// Basis functions of one cell sampled to rank-1 canonical tensors.
struct SampledBasis {
    std::vector<CanonicalTensor3> tensors;  ///< one rank-1 tensor per function
    double max_edge_value = 0.0;  ///< largest |sample| at the first/last kept grid entry
    bool truncation_warning = false;  ///< support reaches the grid boundary above eps
};

/// Piecewise-constant representation: values at cell midpoints of the given
/// grids (which must start at a unit-cell boundary, with n_per_cell pwc cells
/// per unit cell of size b).
SampledBasis sample_basis_pwc(const GtoBasis& basis, const std::array<Grid1D, 3>& grids,
                              const std::array<Index, 3>& cell_index, Index n_per_cell,
                              double b, double eps_ov);

/// Piecewise-linear representation: nodal values on node grids with
/// nbar_per_cell nodes per unit cell.
SampledBasis sample_basis_pwl(const GtoBasis& basis, const std::array<Grid1D, 3>& grids,
                              const std::array<Index, 3>& cell_index, Index nbar_per_cell,
                              double b, double eps_ov);

/// Smallest L0 such that every basis pair with cell separation greater than
/// L0 (in any direction) has 1D factor-product sup norm below eps_ov.
/// Sampled on the n-grid of mesh b/n.
Index overlap_constant(const GtoBasis& basis, double b, Index n, double eps_ov);

}  // namespace latham
