// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "latham/block_circulant.hpp"
#include "latham/canonical_tensor.hpp"

namespace latham::test {

inline std::mt19937 make_rng(unsigned seed) { return std::mt19937(seed); }

inline Eigen::MatrixXd random_matrix(std::mt19937& rng, Index rows, Index cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
    return m;
}

inline CanonicalTensor3 random_tensor(std::mt19937& rng, std::array<Index, 3> dims, Index rank) {
    std::array<Eigen::MatrixXd, 3> f;
    for (int l = 0; l < 3; ++l) f[static_cast<size_t>(l)] = random_matrix(rng, dims[static_cast<size_t>(l)], rank);
    Eigen::VectorXd w = random_matrix(rng, rank, 1).col(0);
    return CanonicalTensor3(std::move(f), std::move(w));
}

// entry-by-entry expansion, independent of dense_materialize's accumulation
inline Dense3 naive_materialize(const CanonicalTensor3& t) {
    const auto d = t.dims();
    Dense3 out(d[0], d[1], d[2]);
    for (Index i = 0; i < d[0]; ++i)
        for (Index j = 0; j < d[1]; ++j)
            for (Index k = 0; k < d[2]; ++k) {
                double s = 0.0;
                for (Index q = 0; q < t.rank(); ++q)
                    s += t.weights()[q] * t.factor(0)(i, q) * t.factor(1)(j, q) *
                         t.factor(2)(k, q);
                out.at(i, j, k) = s;
            }
    return out;
}

inline double max_abs_diff(const Dense3& a, const Dense3& b) {
    return (a.values - b.values).cwiseAbs().maxCoeff();
}

// random d-level generating tensor satisfying A_k^T = A_{L-k}
inline GeneratingBlockTensor random_sym_circulant(std::mt19937& rng, int levels,
                                                  std::array<Index, 3> dims, Index m0) {
    GeneratingBlockTensor gen(levels, dims, m0);
    for (Index k1 = 0; k1 < dims[0]; ++k1)
        for (Index k2 = 0; k2 < dims[1]; ++k2)
            for (Index k3 = 0; k3 < dims[2]; ++k3) {
                const std::array<Index, 3> k{k1, k2, k3};
                std::array<Index, 3> mirror;
                for (int l = 0; l < 3; ++l)
                    mirror[static_cast<size_t>(l)] =
                        k[static_cast<size_t>(l)] == 0 ? 0 : dims[static_cast<size_t>(l)] - k[static_cast<size_t>(l)];
                if (mirror < k) continue;  // handled when visiting the mirror
                Eigen::MatrixXd blk = random_matrix(rng, m0, m0);
                if (mirror == k) {
                    Eigen::MatrixXd sym = 0.5 * (blk + blk.transpose());
                    gen.set_block(k, sym);
                } else {
                    gen.set_block(k, blk);
                    gen.set_block(mirror, blk.transpose());
                }
            }
    return gen;
}

// symmetric circulant with diagonally dominant zero block, so every Fourier
// block is Hermitian positive definite
inline GeneratingBlockTensor random_spd_circulant(std::mt19937& rng, int levels,
                                                  std::array<Index, 3> dims, Index m0,
                                                  double off_scale = 0.05) {
    GeneratingBlockTensor gen = random_sym_circulant(rng, levels, dims, m0);
    GeneratingBlockTensor out(levels, dims, m0);
    for (const auto& [k, blk] : gen.stored()) {
        if (k == std::array<Index, 3>{0, 0, 0}) {
            Eigen::MatrixXd d = off_scale * blk;
            d += Eigen::MatrixXd::Identity(m0, m0) * (1.0 + static_cast<double>(m0));
            out.set_block(k, d);
        } else {
            out.set_block(k, off_scale * blk);
        }
    }
    return out;
}

}  // namespace latham::test
