// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "latham/gto_basis.hpp"

namespace latham {

/// 1D P1 finite element matrices on a uniform grid of n nodes with mesh h:
/// stiffness (1/h) tridiag{-1, 2, -1} and mass (h/6) tridiag{1, 4, 1}.
/// With `periodic` set, the corner entries couple node n-1 back to node 0.
struct Fem1D {
    Index n = 0;
    double h = 0.0;
    bool periodic = false;

    double stiffness_lo() const { return -1.0 / h; }
    double stiffness_diag() const { return 2.0 / h; }
    double mass_lo() const { return h / 6.0; }
    double mass_diag() const { return 4.0 * h / 6.0; }

    /// <A u, v> over full vectors of length n.
    double stiffness_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    /// <S u, v> over full vectors of length n.
    double mass_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

    /// Supported-vector forms; indices are against the same enclosing grid.
    /// Periodic wrap is not supported here (supports are assumed shorter than
    /// the period; callers fold first when that does not hold).
    double stiffness_form(const Supported1D& u, const Supported1D& v) const;
    double mass_form(const Supported1D& u, const Supported1D& v) const;

    Eigen::MatrixXd stiffness_dense() const;
    Eigen::MatrixXd mass_dense() const;
};

/// Open (Dirichlet-convention) 1D FEM pair.
Fem1D fem_1d(Index n, double h);
/// Periodic closure of the same pair.
Fem1D fem_1d_periodic(Index n, double h);

}  // namespace latham
