// SPDX-License-Identifier: Apache-2.0
#include "latham/block_circulant.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <string>

namespace latham {

using Cplx = std::complex<double>;

GeneratingBlockTensor::GeneratingBlockTensor(int levels, std::array<Index, 3> dims, Index m0)
    : levels_(levels), dims_(dims), m0_(m0) {
    if (levels < 1 || levels > 3)
        throw StructureError("GeneratingBlockTensor: levels must be 1, 2 or 3");
    for (int l = 0; l < 3; ++l) {
        if (dims_[static_cast<size_t>(l)] < 1)
            throw DimensionError("GeneratingBlockTensor: level extents must be >= 1");
        if (l >= levels && dims_[static_cast<size_t>(l)] != 1)
            throw DimensionError("GeneratingBlockTensor: extents beyond `levels` must be 1");
    }
    if (m0 < 1) throw DimensionError("GeneratingBlockTensor: m0 must be >= 1");
}

void GeneratingBlockTensor::check_index(const std::array<Index, 3>& k) const {
    for (int l = 0; l < 3; ++l)
        if (k[static_cast<size_t>(l)] < 0 || k[static_cast<size_t>(l)] >= dims_[static_cast<size_t>(l)])
            throw BoundsError("GeneratingBlockTensor: index out of range");
}

void GeneratingBlockTensor::set_block(const std::array<Index, 3>& k, Eigen::MatrixXd block) {
    check_index(k);
    if (block.rows() != m0_ || block.cols() != m0_)
        throw DimensionError("GeneratingBlockTensor: block must be m0 x m0");
    blocks_[k] = std::move(block);
}

const Eigen::MatrixXd* GeneratingBlockTensor::block(const std::array<Index, 3>& k) const {
    check_index(k);
    const auto it = blocks_.find(k);
    return it == blocks_.end() ? nullptr : &it->second;
}

Eigen::MatrixXd GeneratingBlockTensor::block_or_zero(const std::array<Index, 3>& k) const {
    const Eigen::MatrixXd* b = block(k);
    return b ? *b : Eigen::MatrixXd::Zero(m0_, m0_);
}

bool GeneratingBlockTensor::is_symmetric_circulant(double tol) const {
    for (const auto& [k, blk] : blocks_) {
        std::array<Index, 3> mirror;
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            mirror[lu] = k[lu] == 0 ? 0 : dims_[lu] - k[lu];
        }
        const Eigen::MatrixXd other = block_or_zero(mirror);
        if ((blk.transpose() - other).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

namespace {

Index lin_index(const std::array<Index, 3>& k, const std::array<Index, 3>& dims) {
    return (k[0] * dims[1] + k[1]) * dims[2] + k[2];
}

std::array<Index, 3> multi_index(Index lin, const std::array<Index, 3>& dims) {
    return {lin / (dims[1] * dims[2]), (lin / dims[2]) % dims[1], lin % dims[2]};
}

void check_dense_cap(Index size, Index cap, const char* what) {
    if (size > cap)
        throw ResourceCapError(std::string(what) + ": size " + std::to_string(size) +
                               " exceeds dense cap " + std::to_string(cap));
}

// In-place forward FFT along each level of a lexicographic array of complex
// blocks (unnormalized, omega = exp(-2 pi i / L)). Blocks may be rectangular.
void fft_levels(std::vector<Eigen::MatrixXcd>& blk, const std::array<Index, 3>& dims) {
    Eigen::FFT<double> fft;
    std::vector<Cplx> in, out;
    const Index rows = blk.empty() ? 0 : blk.front().rows();
    const Index cols = blk.empty() ? 0 : blk.front().cols();
    for (int axis = 0; axis < 3; ++axis) {
        const Index L = dims[static_cast<size_t>(axis)];
        if (L == 1) continue;
        in.resize(static_cast<size_t>(L));
        out.resize(static_cast<size_t>(L));
        // stride of the axis in the lexicographic layout
        Index stride = 1;
        for (int l = axis + 1; l < 3; ++l) stride *= dims[static_cast<size_t>(l)];
        const Index lines = dims[0] * dims[1] * dims[2] / L;
        for (Index line = 0; line < lines; ++line) {
            // base offset of this line: distribute `line` over the other axes
            const Index inner = line % stride;
            const Index outer = line / stride;
            const Index base = outer * stride * L + inner;
            for (Index r = 0; r < rows; ++r) {
                for (Index c = 0; c < cols; ++c) {
                    for (Index k = 0; k < L; ++k)
                        in[static_cast<size_t>(k)] = blk[static_cast<size_t>(base + k * stride)](r, c);
                    fft.fwd(out, in);
                    for (Index k = 0; k < L; ++k)
                        blk[static_cast<size_t>(base + k * stride)](r, c) = out[static_cast<size_t>(k)];
                }
            }
        }
    }
}

}  // namespace

Eigen::MatrixXcd unitary_dft(Index L) {
    Eigen::MatrixXcd F(L, L);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    for (Index j = 0; j < L; ++j)
        for (Index k = 0; k < L; ++k) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                 static_cast<double>(L);
            F(j, k) = scale * Cplx(std::cos(phase), std::sin(phase));
        }
    return F;
}

Eigen::MatrixXd bc_to_dense(const BlockCirculant& A, Index cap) {
    check_dense_cap(A.size(), cap, "bc_to_dense");
    const auto& gen = A.gen;
    const auto& dims = gen.dims();
    const Index m0 = gen.block_size();
    const Index n = gen.lattice_count();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * m0, n * m0);
    for (Index i = 0; i < n; ++i) {
        const auto mi = multi_index(i, dims);
        for (Index j = 0; j < n; ++j) {
            const auto mj = multi_index(j, dims);
            std::array<Index, 3> k;
            for (int l = 0; l < 3; ++l) {
                const auto lu = static_cast<size_t>(l);
                k[lu] = ((mi[lu] - mj[lu]) % dims[lu] + dims[lu]) % dims[lu];
            }
            if (const Eigen::MatrixXd* blk = gen.block(k))
                out.block(i * m0, j * m0, m0, m0) = *blk;
        }
    }
    return out;
}

Eigen::MatrixXd toeplitz_to_dense(const SymBlockToeplitz& T, Index cap) {
    check_dense_cap(T.size(), cap, "toeplitz_to_dense");
    const auto& gen = T.gen;
    const auto& dims = gen.dims();
    const Index m0 = gen.block_size();
    const Index n = gen.lattice_count();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * m0, n * m0);
    for (Index i = 0; i < n; ++i) {
        const auto mi = multi_index(i, dims);
        for (Index j = 0; j < n; ++j) {
            const auto mj = multi_index(j, dims);
            std::array<Index, 3> k;
            // the recursive symmetric-Toeplitz expansion transposes the
            // generating block exactly when the innermost nonzero offset is
            // negative
            bool transpose = false;
            for (int l = 0; l < 3; ++l) {
                const auto lu = static_cast<size_t>(l);
                const Index d = mi[lu] - mj[lu];
                k[lu] = std::abs(d);
                if (d != 0) transpose = d < 0;
            }
            if (const Eigen::MatrixXd* blk = gen.block(k)) {
                if (!transpose)
                    out.block(i * m0, j * m0, m0, m0) = *blk;
                else
                    out.block(i * m0, j * m0, m0, m0) = blk->transpose();
            }
        }
    }
    return out;
}

BlockDiagonalForm bc_block_diagonalize(const BlockCirculant& A) {
    const auto& gen = A.gen;
    BlockDiagonalForm bd;
    bd.levels = gen.levels();
    bd.dims = gen.dims();
    bd.m0 = gen.block_size();
    bd.blocks.assign(static_cast<size_t>(gen.lattice_count()),
                     Eigen::MatrixXcd::Zero(bd.m0, bd.m0));
    for (const auto& [k, blk] : gen.stored())
        bd.blocks[static_cast<size_t>(lin_index(k, bd.dims))] = blk.cast<Cplx>();
    fft_levels(bd.blocks, bd.dims);
    return bd;
}

Eigen::MatrixXd bc_reconstruct_dense(const BlockDiagonalForm& bd, Index cap) {
    const Index n = bd.k_count();
    const Index m0 = bd.m0;
    check_dense_cap(n * m0, cap, "bc_reconstruct_dense");
    // (F* x I) bdiag (F x I) with the multilevel unitary DFT
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Identity(1, 1);
    for (int l = 0; l < bd.levels; ++l) {
        const Eigen::MatrixXcd Fl = unitary_dft(bd.dims[static_cast<size_t>(l)]);
        Eigen::MatrixXcd next(F.rows() * Fl.rows(), F.cols() * Fl.cols());
        for (Index i = 0; i < F.rows(); ++i)
            for (Index j = 0; j < F.cols(); ++j) next.block(i * Fl.rows(), j * Fl.cols(), Fl.rows(), Fl.cols()) = F(i, j) * Fl;
        F = std::move(next);
    }
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n * m0, n * m0);
    for (Index j = 0; j < n; ++j) D.block(j * m0, j * m0, m0, m0) = bd.blocks[static_cast<size_t>(j)];
    Eigen::MatrixXcd FI = Eigen::MatrixXcd::Zero(n * m0, n * m0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) FI.block(i * m0, j * m0, m0, m0) = F(i, j) * Eigen::MatrixXcd::Identity(m0, m0);
    const Eigen::MatrixXcd rec = FI.adjoint() * D * FI;
    return rec.real();
}

KPointSpectrum bc_eigensolve(const BlockCirculant& A, bool symmetric, bool want_vectors) {
    if (symmetric && !A.gen.is_symmetric_circulant())
        throw StructureError("bc_eigensolve: symmetric flag set but generating tensor is not "
                             "symmetric-circulant");
    const BlockDiagonalForm bd = bc_block_diagonalize(A);
    KPointSpectrum spec;
    spec.dims = bd.dims;
    spec.m0 = bd.m0;
    spec.solver_path = "bc_eigensolve";
    spec.eigenvalues.resize(static_cast<size_t>(bd.k_count()));
    if (want_vectors) spec.eigenvectors.resize(static_cast<size_t>(bd.k_count()));
    for (Index j = 0; j < bd.k_count(); ++j) {
        const Eigen::MatrixXcd& B = bd.blocks[static_cast<size_t>(j)];
        const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
        if (symmetric) {
            if ((B - B.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
                throw Error("bc_eigensolve: diagonal block " + std::to_string(j) +
                            " is not Hermitian");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
            es.compute(B, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
            spec.eigenvalues[static_cast<size_t>(j)] = es.eigenvalues();
            if (want_vectors) spec.eigenvectors[static_cast<size_t>(j)] = es.eigenvectors();
        } else {
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, want_vectors);
            Eigen::VectorXcd ev = es.eigenvalues();
            if (ev.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
                throw Error("bc_eigensolve: complex eigenvalues beyond tolerance at block " +
                            std::to_string(j));
            // sort ascending by real part, permute vectors accordingly
            std::vector<Index> perm(static_cast<size_t>(ev.size()));
            for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<Index>(i);
            std::sort(perm.begin(), perm.end(),
                      [&](Index a, Index b) { return ev[a].real() < ev[b].real(); });
            Eigen::VectorXd sorted(ev.size());
            Eigen::MatrixXcd vecs;
            if (want_vectors) vecs.resize(bd.m0, bd.m0);
            for (Index i = 0; i < ev.size(); ++i) {
                sorted[i] = ev[perm[static_cast<size_t>(i)]].real();
                if (want_vectors) vecs.col(i) = es.eigenvectors().col(perm[static_cast<size_t>(i)]);
            }
            spec.eigenvalues[static_cast<size_t>(j)] = std::move(sorted);
            if (want_vectors) spec.eigenvectors[static_cast<size_t>(j)] = std::move(vecs);
        }
    }
    return spec;
}

Eigen::VectorXcd bc_full_eigenvector(const KPointSpectrum& spec, Index j_lin, Index m) {
    if (!spec.has_vectors()) throw StructureError("bc_full_eigenvector: no eigenvectors stored");
    const auto jm = spec.k_multi(j_lin);
    const Index n = spec.k_count();
    const Index m0 = spec.m0;
    const Eigen::VectorXcd u = spec.eigenvectors[static_cast<size_t>(j_lin)].col(m);
    Eigen::VectorXcd out(n * m0);
    double norm = 1.0;
    for (int l = 0; l < 3; ++l) norm *= static_cast<double>(spec.dims[static_cast<size_t>(l)]);
    norm = 1.0 / std::sqrt(norm);
    for (Index i = 0; i < n; ++i) {
        const auto mi = multi_index(i, spec.dims);
        double phase = 0.0;
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            phase += 2.0 * std::numbers::pi * static_cast<double>(mi[lu] * jm[lu]) /
                     static_cast<double>(spec.dims[lu]);
        }
        const Cplx f = norm * Cplx(std::cos(phase), std::sin(phase));
        out.segment(i * m0, m0) = f * u;
    }
    return out;
}

Eigen::VectorXd bc_matvec(const BlockCirculant& A, const Eigen::VectorXd& x) {
    const auto& gen = A.gen;
    const Index n = gen.lattice_count();
    const Index m0 = gen.block_size();
    if (x.size() != n * m0)
        throw DimensionError("bc_matvec: vector length " + std::to_string(x.size()) +
                             " != " + std::to_string(n * m0));
    const BlockDiagonalForm bd = bc_block_diagonalize(A);

    // forward transform of the block components of x along each level
    std::vector<Eigen::MatrixXcd> xb(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i)
        xb[static_cast<size_t>(i)] = x.segment(i * m0, m0).cast<Cplx>();
    fft_levels(xb, gen.dims());

    for (Index j = 0; j < n; ++j)
        xb[static_cast<size_t>(j)] = bd.blocks[static_cast<size_t>(j)] * xb[static_cast<size_t>(j)];

    // inverse transform: conjugate trick, then scale by 1/PiL
    for (auto& v : xb) v = v.conjugate();
    fft_levels(xb, gen.dims());
    double scale = 1.0;
    for (int l = 0; l < 3; ++l) scale *= static_cast<double>(gen.dims()[static_cast<size_t>(l)]);
    Eigen::VectorXd out(n * m0);
    for (Index i = 0; i < n; ++i)
        out.segment(i * m0, m0) = xb[static_cast<size_t>(i)].conjugate().real() / scale;
    return out;
}

BlockCirculant toeplitz_embed(const SymBlockToeplitz& T) {
    const auto& gen = T.gen;
    std::array<Index, 3> dims2{1, 1, 1};
    for (int l = 0; l < gen.levels(); ++l) dims2[static_cast<size_t>(l)] = 2 * gen.dims()[static_cast<size_t>(l)];
    GeneratingBlockTensor out(gen.levels(), dims2, gen.block_size());
    // every circulant slot maps back to a signed Toeplitz offset; slot L per
    // level is the zero padding block
    const Index total = dims2[0] * dims2[1] * dims2[2];
    for (Index lin = 0; lin < total; ++lin) {
        const auto k = multi_index(lin, dims2);
        std::array<Index, 3> src;
        bool transpose = false;
        bool zero = false;
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            const Index Ll = gen.dims()[lu];
            if (k[lu] < Ll) {
                src[lu] = k[lu];
                if (k[lu] != 0) transpose = false;
            } else if (k[lu] == Ll && l < gen.levels()) {
                zero = true;
                break;
            } else {
                src[lu] = dims2[lu] - k[lu];  // negative offset side
                transpose = true;
            }
        }
        if (zero) continue;
        if (const Eigen::MatrixXd* blk = gen.block(src)) {
            if (!transpose)
                out.set_block(k, *blk);
            else
                out.set_block(k, blk->transpose());
        }
    }
    return BlockCirculant{std::move(out)};
}

Eigen::VectorXd toeplitz_matvec(const SymBlockToeplitz& T, const Eigen::VectorXd& x) {
    const auto& gen = T.gen;
    const Index m0 = gen.block_size();
    if (x.size() != T.size())
        throw DimensionError("toeplitz_matvec: vector length mismatch");
    const BlockCirculant C = toeplitz_embed(T);
    const auto& d2 = C.gen.dims();
    Eigen::VectorXd xp = Eigen::VectorXd::Zero(C.size());
    const Index n = gen.lattice_count();
    for (Index i = 0; i < n; ++i) {
        const auto mi = multi_index(i, gen.dims());
        xp.segment(lin_index(mi, d2) * m0, m0) = x.segment(i * m0, m0);
    }
    const Eigen::VectorXd yp = bc_matvec(C, xp);
    Eigen::VectorXd y(T.size());
    for (Index i = 0; i < n; ++i) {
        const auto mi = multi_index(i, gen.dims());
        y.segment(i * m0, m0) = yp.segment(lin_index(mi, d2) * m0, m0);
    }
    return y;
}

}  // namespace latham
