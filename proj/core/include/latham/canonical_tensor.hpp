// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "latham/grid.hpp"

namespace latham {

/// Dense third-order tensor, row-major with the last index fastest.
/// Oracle-side companion of CanonicalTensor3; kept deliberately simple.
struct Dense3 {
    std::array<Index, 3> dims{0, 0, 0};
    Eigen::VectorXd values;

    Dense3() = default;
    Dense3(Index n1, Index n2, Index n3)
        : dims{n1, n2, n3}, values(Eigen::VectorXd::Zero(n1 * n2 * n3)) {}

    double& at(Index i, Index j, Index k) {
        return values[(i * dims[1] + j) * dims[2] + k];
    }
    double at(Index i, Index j, Index k) const {
        return values[(i * dims[1] + j) * dims[2] + k];
    }
    Index size() const { return dims[0] * dims[1] * dims[2]; }
};

/// Window of a larger grid: per-direction integer shift and extent,
/// both counted in grid units.
struct WindowSpec {
    std::array<Index, 3> shifts{0, 0, 0};
    std::array<Index, 3> sizes{0, 0, 0};
};

/// Rank-R canonical (CP-format) third-order tensor.
///
/// The represented tensor is sum_q weight[q] * f1.col(q) x f2.col(q) x f3.col(q).
/// Weights are kept separate from the factor columns so that windowing and
/// per-direction summation never renormalize columns. Rank 0 is the zero
/// tensor. Values are immutable after construction; all operations below are
/// pure functions.
class CanonicalTensor3 {
public:
    CanonicalTensor3() = default;

    /// Takes three n_l x R factor panels and R weights.
    CanonicalTensor3(std::array<Eigen::MatrixXd, 3> factors, Eigen::VectorXd weights);

    /// Zero tensor of the given shape.
    static CanonicalTensor3 zero(std::array<Index, 3> dims);

    /// Rank-1 tensor with unit weight.
    static CanonicalTensor3 rank_one(const Eigen::VectorXd& f1, const Eigen::VectorXd& f2,
                                     const Eigen::VectorXd& f3, double weight = 1.0);

    Index rank() const { return weights_.size(); }
    std::array<Index, 3> dims() const { return dims_; }
    const Eigen::MatrixXd& factor(int dir) const { return factors_[static_cast<size_t>(dir)]; }
    const Eigen::VectorXd& weights() const { return weights_; }

    /// Rescale all weights by s.
    CanonicalTensor3 scaled(double s) const;

    bool same_shape(const CanonicalTensor3& other) const { return dims_ == other.dims_; }

private:
    std::array<Index, 3> dims_{0, 0, 0};
    std::array<Eigen::MatrixXd, 3> factors_;  // n_l x R each
    Eigen::VectorXd weights_;                 // R
};

/// Default cap for dense materialization (2^24 entries).
inline constexpr Index kDefaultMaterializeCap = Index(1) << 24;

/// Expand to a dense tensor. Refuses if the entry count exceeds `cap`.
Dense3 dense_materialize(const CanonicalTensor3& t, Index cap = kDefaultMaterializeCap);

/// Pointwise product. Output rank is rank(a)*rank(b); no compression is applied.
CanonicalTensor3 hadamard(const CanonicalTensor3& a, const CanonicalTensor3& b);

/// Frobenius inner product evaluated by 1D dot products,
/// cost O(Ra*Rb*(n1+n2+n3)).
double inner(const CanonicalTensor3& a, const CanonicalTensor3& b);

/// Restrict each factor column to the contiguous slice [shift, shift+size).
CanonicalTensor3 window(const CanonicalTensor3& master, const WindowSpec& w);

/// Assembled sum of windows of one master tensor over a Cartesian product of
/// per-direction shifts: direction-l output column q is the sum over
/// s in shifts[l] of master.factor(l).col(q).segment(s, sizes[l]).
/// This reproduces the plain sum of all windows while keeping the rank fixed.
/// Uniform shift progressions are accumulated by running prefix sums, so the
/// cost stays linear in the master length rather than shifts * window size.
CanonicalTensor3 assembled_window_sum(const CanonicalTensor3& master,
                                      const std::array<std::vector<Index>, 3>& shifts,
                                      const std::array<Index, 3>& sizes);

/// Sum of identically shaped canonical tensors by panel concatenation
/// (rank adds up).
CanonicalTensor3 concat_sum(const std::vector<CanonicalTensor3>& terms);

}  // namespace latham
