// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "latham/grid.hpp"

namespace latham {

/// Exponential-sum approximation of the inverse distance,
///
///   1/z  ~  sum_q w_q * exp(-t_q^2 z^2),
///
/// obtained from the Gauss integral 1/z = (2/sqrt(pi)) int_0^inf exp(-z^2 t^2) dt
/// by the substitution t = exp(u - exp(-u)) and the trapezoidal (sinc) rule
/// with step h = log(M)/M on u in [-M h, M h]. The double-exponential decay of
/// the transformed integrand on the left makes the truncation error negligible
/// against the discretization error, so the rule converges fast in M over a
/// wide z range. R = 2M+1 terms; all nodes and weights positive.
struct SincQuadrature {
    Index half_count = 0;   ///< M
    double step = 0.0;      ///< h
    Eigen::VectorXd nodes;    ///< t_q, q = -M..M
    Eigen::VectorXd weights;  ///< w_q

    Index rank() const { return 2 * half_count + 1; }

    /// Evaluate sum_q w_q exp(-t_q^2 z^2).
    double evaluate(double z) const;

    /// |evaluate(z) - 1/z| * z
    double relative_error(double z) const;
};

SincQuadrature build_sinc_quadrature(Index M);

}  // namespace latham
