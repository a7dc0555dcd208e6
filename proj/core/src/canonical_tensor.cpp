// SPDX-License-Identifier: Apache-2.0
#include "latham/canonical_tensor.hpp"

#include <string>

namespace latham {

CanonicalTensor3::CanonicalTensor3(std::array<Eigen::MatrixXd, 3> factors,
                                   Eigen::VectorXd weights)
    : factors_(std::move(factors)), weights_(std::move(weights)) {
    const Index r = weights_.size();
    for (int l = 0; l < 3; ++l) {
        if (factors_[static_cast<size_t>(l)].cols() != r)
            throw DimensionError("CanonicalTensor3: factor panel " + std::to_string(l) +
                                 " has " + std::to_string(factors_[static_cast<size_t>(l)].cols()) +
                                 " columns, expected rank " + std::to_string(r));
        dims_[static_cast<size_t>(l)] = factors_[static_cast<size_t>(l)].rows();
    }
}

CanonicalTensor3 CanonicalTensor3::zero(std::array<Index, 3> dims) {
    std::array<Eigen::MatrixXd, 3> f;
    for (int l = 0; l < 3; ++l) f[static_cast<size_t>(l)] = Eigen::MatrixXd(dims[static_cast<size_t>(l)], 0);
    return CanonicalTensor3(std::move(f), Eigen::VectorXd(0));
}

CanonicalTensor3 CanonicalTensor3::rank_one(const Eigen::VectorXd& f1, const Eigen::VectorXd& f2,
                                            const Eigen::VectorXd& f3, double weight) {
    std::array<Eigen::MatrixXd, 3> f{f1, f2, f3};
    Eigen::VectorXd w(1);
    w[0] = weight;
    return CanonicalTensor3(std::move(f), std::move(w));
}

CanonicalTensor3 CanonicalTensor3::scaled(double s) const {
    CanonicalTensor3 out = *this;
    out.weights_ *= s;
    return out;
}

Dense3 dense_materialize(const CanonicalTensor3& t, Index cap) {
    const auto d = t.dims();
    const Index total = d[0] * d[1] * d[2];
    if (total > cap)
        throw ResourceCapError("dense_materialize: " + std::to_string(total) +
                               " entries exceed cap " + std::to_string(cap));
    Dense3 out(d[0], d[1], d[2]);
    for (Index q = 0; q < t.rank(); ++q) {
        const double w = t.weights()[q];
        const auto f1 = t.factor(0).col(q);
        const auto f2 = t.factor(1).col(q);
        const auto f3 = t.factor(2).col(q);
        Index idx = 0;
        for (Index i = 0; i < d[0]; ++i) {
            const double wi = w * f1[i];
            for (Index j = 0; j < d[1]; ++j) {
                const double wij = wi * f2[j];
                for (Index k = 0; k < d[2]; ++k, ++idx) out.values[idx] += wij * f3[k];
            }
        }
    }
    return out;
}

CanonicalTensor3 hadamard(const CanonicalTensor3& a, const CanonicalTensor3& b) {
    if (!a.same_shape(b)) throw DimensionError("hadamard: shape mismatch");
    const Index ra = a.rank(), rb = b.rank();
    const auto d = a.dims();
    std::array<Eigen::MatrixXd, 3> f;
    for (int l = 0; l < 3; ++l) f[static_cast<size_t>(l)].resize(d[static_cast<size_t>(l)], ra * rb);
    Eigen::VectorXd w(ra * rb);
    for (Index q = 0; q < ra; ++q) {
        for (Index r = 0; r < rb; ++r) {
            const Index c = q * rb + r;
            w[c] = a.weights()[q] * b.weights()[r];
            for (int l = 0; l < 3; ++l)
                f[static_cast<size_t>(l)].col(c) =
                    a.factor(l).col(q).cwiseProduct(b.factor(l).col(r));
        }
    }
    return CanonicalTensor3(std::move(f), std::move(w));
}

double inner(const CanonicalTensor3& a, const CanonicalTensor3& b) {
    if (!a.same_shape(b)) throw DimensionError("inner: shape mismatch");
    // Gram matrices of the factor panels; entry (q,r) of their Hadamard
    // product is the per-pair 1D dot product chain.
    Eigen::MatrixXd g = a.factor(0).transpose() * b.factor(0);
    g = g.cwiseProduct(Eigen::MatrixXd(a.factor(1).transpose() * b.factor(1)));
    g = g.cwiseProduct(Eigen::MatrixXd(a.factor(2).transpose() * b.factor(2)));
    return a.weights().dot(g * b.weights());
}

CanonicalTensor3 window(const CanonicalTensor3& master, const WindowSpec& w) {
    const auto d = master.dims();
    std::array<Eigen::MatrixXd, 3> f;
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        if (w.sizes[lu] < 1 || w.shifts[lu] < 0 || w.shifts[lu] + w.sizes[lu] > d[lu])
            throw BoundsError("window: direction " + std::to_string(l) + " slice [" +
                              std::to_string(w.shifts[lu]) + ", " +
                              std::to_string(w.shifts[lu] + w.sizes[lu]) +
                              ") outside master extent " + std::to_string(d[lu]));
        f[lu] = master.factor(l).middleRows(w.shifts[lu], w.sizes[lu]);
    }
    return CanonicalTensor3(std::move(f), master.weights());
}

namespace {

// True if v is an arithmetic progression with positive common difference.
bool uniform_step(const std::vector<Index>& v, Index& step) {
    if (v.size() < 2) return false;
    step = v[1] - v[0];
    if (step <= 0) return false;
    for (size_t i = 2; i < v.size(); ++i)
        if (v[i] - v[i - 1] != step) return false;
    return true;
}

}  // namespace

CanonicalTensor3 assembled_window_sum(const CanonicalTensor3& master,
                                      const std::array<std::vector<Index>, 3>& shifts,
                                      const std::array<Index, 3>& sizes) {
    const auto d = master.dims();
    const Index rank = master.rank();
    std::array<Eigen::MatrixXd, 3> f;
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        const Index size = sizes[lu];
        const auto& sh = shifts[lu];
        if (sh.empty()) throw StructureError("assembled_window_sum: empty shift set");
        for (Index s : sh)
            if (s < 0 || s + size > d[lu])
                throw BoundsError("assembled_window_sum: shift " + std::to_string(s) +
                                  " in direction " + std::to_string(l) +
                                  " outside master extent " + std::to_string(d[lu]));
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(size, rank);
        Index step = 0;
        if (uniform_step(sh, step)) {
            // Running sums along each residue class modulo the step:
            // out[i] = sum_k m[s0 + i + k*step] satisfies
            // out[i] = out[i-step] + m[s0 + i + (K-1)*step] - m[s0 + i - step].
            const Index s0 = sh.front();
            const Index nsh = static_cast<Index>(sh.size());
            const auto& m = master.factor(l);
            for (Index q = 0; q < rank; ++q) {
                for (Index i = 0; i < std::min(step, size); ++i) {
                    double sum = 0.0;
                    for (Index k = 0; k < nsh; ++k) sum += m(s0 + i + k * step, q);
                    acc(i, q) = sum;
                }
                for (Index i = step; i < size; ++i)
                    acc(i, q) = acc(i - step, q) + m(s0 + i + (nsh - 1) * step, q) -
                                m(s0 + i - step, q);
            }
        } else {
            for (Index s : sh) acc += master.factor(l).middleRows(s, size);
        }
        f[lu] = std::move(acc);
    }
    return CanonicalTensor3(std::move(f), master.weights());
}

CanonicalTensor3 concat_sum(const std::vector<CanonicalTensor3>& terms) {
    if (terms.empty()) throw StructureError("concat_sum: no terms");
    const auto d = terms.front().dims();
    Index total_rank = 0;
    for (const auto& t : terms) {
        if (t.dims() != d) throw DimensionError("concat_sum: shape mismatch");
        total_rank += t.rank();
    }
    std::array<Eigen::MatrixXd, 3> f;
    for (int l = 0; l < 3; ++l) f[static_cast<size_t>(l)].resize(d[static_cast<size_t>(l)], total_rank);
    Eigen::VectorXd w(total_rank);
    Index at = 0;
    for (const auto& t : terms) {
        const Index r = t.rank();
        if (r == 0) continue;
        w.segment(at, r) = t.weights();
        for (int l = 0; l < 3; ++l)
            f[static_cast<size_t>(l)].middleCols(at, r) = t.factor(l);
        at += r;
    }
    return CanonicalTensor3(std::move(f), std::move(w));
}

}  // namespace latham
