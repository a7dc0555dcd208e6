// SPDX-License-Identifier: Apache-2.0
#include "latham/factorized_diag.hpp"

#include <unsupported/Eigen/FFT>

#include <string>

namespace latham {

using Cplx = std::complex<double>;

FactorizedDiagonalizer::FactorizedDiagonalizer(int levels, std::array<Index, 3> dims, Index m0,
                                               std::vector<SeparableTerm> terms)
    : levels_(levels), dims_(dims), m0_(m0), terms_(std::move(terms)) {
    if (levels < 1 || levels > 3)
        throw StructureError("FactorizedDiagonalizer: levels must be 1, 2 or 3");
    if (terms_.empty()) throw StructureError("FactorizedDiagonalizer: no separable terms");
    for (const auto& term : terms_) {
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            const Index Ll = l < levels ? dims_[lu] : 1;
            if (static_cast<Index>(term.level_blocks[lu].size()) != Ll)
                throw StructureError("FactorizedDiagonalizer: level " + std::to_string(l) +
                                     " sequence must have " + std::to_string(Ll) + " blocks");
            for (const auto& blk : term.level_blocks[lu])
                if (blk.rows() != m0 || blk.cols() != m0)
                    throw StructureError(
                        "FactorizedDiagonalizer: inconsistent block size across levels");
        }
    }

    // stage 1: 1D FFT along each level sequence, entrywise over block slots
    Eigen::FFT<double> fft;
    transformed_.resize(terms_.size());
    std::vector<Cplx> in, out;
    for (size_t t = 0; t < terms_.size(); ++t) {
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            const auto& seq = terms_[t].level_blocks[lu];
            const Index Ll = static_cast<Index>(seq.size());
            auto& dst = transformed_[t][lu];
            dst.assign(static_cast<size_t>(Ll), Eigen::MatrixXcd(m0_, m0_));
            if (Ll == 1) {
                dst[0] = seq[0].cast<Cplx>();
                continue;
            }
            in.resize(static_cast<size_t>(Ll));
            out.resize(static_cast<size_t>(Ll));
            for (Index r = 0; r < m0_; ++r) {
                for (Index c = 0; c < m0_; ++c) {
                    for (Index k = 0; k < Ll; ++k) in[static_cast<size_t>(k)] = seq[static_cast<size_t>(k)](r, c);
                    fft.fwd(out, in);
                    for (Index j = 0; j < Ll; ++j) dst[static_cast<size_t>(j)](r, c) = out[static_cast<size_t>(j)];
                }
            }
        }
    }
}

Eigen::MatrixXcd FactorizedDiagonalizer::block(Index j_lin) const {
    const Index j1 = j_lin / (dims_[1] * dims_[2]);
    const Index j2 = (j_lin / dims_[2]) % dims_[1];
    const Index j3 = j_lin % dims_[2];
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m0_, m0_);
    for (const auto& tr : transformed_) {
        out += tr[0][static_cast<size_t>(j1)]
                   .cwiseProduct(tr[1][static_cast<size_t>(j2)])
                   .cwiseProduct(tr[2][static_cast<size_t>(j3)]);
    }
    return out;
}

BlockDiagonalForm FactorizedDiagonalizer::to_block_diagonal() const {
    BlockDiagonalForm bd;
    bd.levels = levels_;
    bd.dims = dims_;
    bd.m0 = m0_;
    bd.blocks.resize(static_cast<size_t>(k_count()));
    for (Index j = 0; j < k_count(); ++j) bd.blocks[static_cast<size_t>(j)] = block(j);
    return bd;
}

GeneratingBlockTensor FactorizedDiagonalizer::expand() const {
    GeneratingBlockTensor gen(levels_, dims_, m0_);
    for (Index k1 = 0; k1 < dims_[0]; ++k1)
        for (Index k2 = 0; k2 < dims_[1]; ++k2)
            for (Index k3 = 0; k3 < dims_[2]; ++k3) {
                Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(m0_, m0_);
                for (const auto& term : terms_)
                    blk += term.level_blocks[0][static_cast<size_t>(k1)]
                               .cwiseProduct(term.level_blocks[1][static_cast<size_t>(k2)])
                               .cwiseProduct(term.level_blocks[2][static_cast<size_t>(k3)]);
                if (blk.cwiseAbs().maxCoeff() > 0.0) gen.set_block({k1, k2, k3}, std::move(blk));
            }
    return gen;
}

BlockDiagonalForm factorized_block_diagonalize(int levels, std::array<Index, 3> dims, Index m0,
                                               std::vector<SeparableTerm> terms) {
    return FactorizedDiagonalizer(levels, dims, m0, std::move(terms)).to_block_diagonal();
}

}  // namespace latham
