// SPDX-License-Identifier: Apache-2.0
#include "latham/eigensolver.hpp"

#include <Eigen/Cholesky>

#include <string>

#include "latham/parallel.hpp"

namespace latham {

DenseSpectrum solve_box_dense(const Eigen::MatrixXd& H, const Eigen::MatrixXd& S,
                              bool want_vectors, Index cap) {
    const Index n = H.rows();
    if (H.cols() != n || S.rows() != n || S.cols() != n)
        throw DimensionError("solve_box_dense: H and S must be square and same size");
    if (n > cap)
        throw ResourceCapError("solve_box_dense: size " + std::to_string(n) +
                               " exceeds dense cap " + std::to_string(cap));
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success)
        throw DefinitenessError("solve_box_dense: overlap matrix is not positive definite "
                                "(near-linear-dependent basis?)");
    // L^-1 H L^-T, then back-transform eigenvectors
    Eigen::MatrixXd Y = llt.matrixL().solve(H);
    Eigen::MatrixXd A = llt.matrixL().solve(Y.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.compute(0.5 * (A + A.transpose()),
               want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("solve_box_dense: eigensolver failed");
    DenseSpectrum out;
    out.eigenvalues = es.eigenvalues();
    if (want_vectors) out.eigenvectors = llt.matrixU().solve(es.eigenvectors());
    return out;
}

AssembledOperator combine(double wa, const AssembledOperator& a, double wb,
                          const AssembledOperator& b) {
    if (a.periodic != b.periodic || a.m0 != b.m0 || a.L != b.L)
        throw StructureError("combine: operators have different layouts");
    AssembledOperator out;
    out.which = a.which;
    out.periodic = a.periodic;
    out.m0 = a.m0;
    out.L = a.L;
    out.overlap_L0 = std::max(a.overlap_L0, b.overlap_L0);
    out.coefficient_rank = a.coefficient_rank + b.coefficient_rank;
    if (!a.periodic) {
        out.dense = wa * a.dense + wb * b.dense;
        return out;
    }
    out.gen = GeneratingBlockTensor(3, a.L, a.m0);
    for (const auto& [k, blk] : a.gen.stored())
        out.gen.set_block(k, wa * blk + wb * b.gen.block_or_zero(k));
    for (const auto& [k, blk] : b.gen.stored())
        if (!a.gen.block(k)) out.gen.set_block(k, wb * blk);
    auto scaled_terms = [](double w, const std::vector<SeparableTerm>& terms) {
        std::vector<SeparableTerm> out_terms = terms;
        for (auto& t : out_terms)
            for (auto& blk : t.level_blocks[0]) blk *= w;
        return out_terms;
    };
    out.separable = scaled_terms(wa, a.separable);
    const auto more = scaled_terms(wb, b.separable);
    out.separable.insert(out.separable.end(), more.begin(), more.end());
    return out;
}

namespace {

// per-k-point Hermitian-definite pencil solve by Cholesky reduction
void solve_pencil(const Eigen::MatrixXcd& Hj, const Eigen::MatrixXcd& Sj, Index j,
                  bool want_vectors, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
    const double hscale = std::max(1.0, Hj.cwiseAbs().maxCoeff());
    const double sscale = std::max(1.0, Sj.cwiseAbs().maxCoeff());
    if ((Hj - Hj.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * hscale ||
        (Sj - Sj.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * sscale)
        throw Error("solve_periodic: non-Hermitian diagonal block at k-point " +
                    std::to_string(j));
    Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (Sj + Sj.adjoint()));
    if (llt.info() != Eigen::Success)
        throw DefinitenessError("solve_periodic: overlap block at k-point " + std::to_string(j) +
                                " is not positive definite");
    Eigen::MatrixXcd Y = llt.matrixL().solve(0.5 * (Hj + Hj.adjoint()));
    Eigen::MatrixXcd A = llt.matrixL().solve(Y.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
    es.compute(0.5 * (A + A.adjoint()),
               want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error("solve_periodic: eigensolver failed at k-point " + std::to_string(j));
    values = es.eigenvalues();
    if (want_vectors) vectors = llt.matrixU().solve(es.eigenvectors());
}

KPointSpectrum solve_blocks(const BlockDiagonalForm& Hbd,
                            const std::function<Eigen::MatrixXcd(Index)>& Sblock,
                            const char* path, bool want_vectors, Index threads) {
    KPointSpectrum spec;
    spec.dims = Hbd.dims;
    spec.m0 = Hbd.m0;
    spec.solver_path = path;
    const Index total = Hbd.k_count();
    spec.eigenvalues.resize(static_cast<size_t>(total));
    if (want_vectors) spec.eigenvectors.resize(static_cast<size_t>(total));

    std::vector<std::string> failures(static_cast<size_t>(total));
    parallel_for(total, threads, [&](Index j) {
        try {
            Eigen::MatrixXcd vecs;
            solve_pencil(Hbd.blocks[static_cast<size_t>(j)], Sblock(j), j, want_vectors,
                         spec.eigenvalues[static_cast<size_t>(j)], vecs);
            if (want_vectors) spec.eigenvectors[static_cast<size_t>(j)] = std::move(vecs);
        } catch (const std::exception& e) {
            failures[static_cast<size_t>(j)] = e.what();
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) throw DefinitenessError(f);
    return spec;
}

}  // namespace

KPointSpectrum solve_periodic(const GeneratingBlockTensor& Hgen,
                              const GeneratingBlockTensor& Sgen, bool want_vectors,
                              Index threads) {
    if (Hgen.dims() != Sgen.dims() || Hgen.block_size() != Sgen.block_size())
        throw StructureError("solve_periodic: H and S layouts differ");
    const BlockDiagonalForm Hbd = bc_block_diagonalize(BlockCirculant{Hgen});
    const BlockDiagonalForm Sbd = bc_block_diagonalize(BlockCirculant{Sgen});
    return solve_blocks(
        Hbd, [&](Index j) { return Sbd.blocks[static_cast<size_t>(j)]; }, "periodic_fft",
        want_vectors, threads);
}

KPointSpectrum solve_periodic(const AssembledOperator& H, const AssembledOperator& S,
                              bool want_vectors, Index threads) {
    if (!H.periodic || !S.periodic)
        throw StructureError("solve_periodic: operators must be periodic assemblies");
    return solve_periodic(H.gen, S.gen, want_vectors, threads);
}

KPointSpectrum solve_periodic_factorized(const AssembledOperator& H, const AssembledOperator& S,
                                         bool want_vectors, Index threads,
                                         double metadata_tol) {
    if (!H.periodic || !S.periodic)
        throw StructureError("solve_periodic_factorized: operators must be periodic assemblies");
    if (H.separable.empty() || S.separable.empty())
        throw StructureError("solve_periodic_factorized: rank metadata missing");
    for (const AssembledOperator* op : {&H, &S}) {
        const double resid = separable_residual(*op);
        if (resid > metadata_tol)
            throw StructureError("solve_periodic_factorized: factorization residual " +
                                 std::to_string(resid) + " exceeds tolerance");
    }
    FactorizedDiagonalizer Hf(3, H.L, H.m0, H.separable);
    FactorizedDiagonalizer Sf(3, S.L, S.m0, S.separable);
    BlockDiagonalForm Hbd = Hf.to_block_diagonal();
    KPointSpectrum spec = solve_blocks(
        Hbd, [&](Index j) { return Sf.block(j); }, "periodic_factorized", want_vectors, threads);
    return spec;
}

Eigen::MatrixXcd reconstruct_eigenvectors(const KPointSpectrum& spec, Index cap) {
    if (!spec.has_vectors())
        throw StructureError("reconstruct_eigenvectors: spectrum carries no eigenvectors");
    const Index N = spec.k_count() * spec.m0;
    if (N > cap)
        throw ResourceCapError("reconstruct_eigenvectors: size exceeds cap");
    Eigen::MatrixXcd out(N, N);
    Index col = 0;
    for (Index j = 0; j < spec.k_count(); ++j)
        for (Index m = 0; m < spec.m0; ++m) out.col(col++) = bc_full_eigenvector(spec, j, m);
    return out;
}

BandStructure spectral_bands(const KPointSpectrum& spec) {
    BandStructure bs;
    bs.m0 = spec.m0;
    bs.bands.assign(static_cast<size_t>(spec.m0), Eigen::VectorXd(spec.k_count()));
    bs.band_min.resize(spec.m0);
    bs.band_max.resize(spec.m0);
    for (Index m = 0; m < spec.m0; ++m) {
        for (Index j = 0; j < spec.k_count(); ++j)
            bs.bands[static_cast<size_t>(m)][j] = spec.eigenvalues[static_cast<size_t>(j)][m];
        bs.band_min[m] = bs.bands[static_cast<size_t>(m)].minCoeff();
        bs.band_max[m] = bs.bands[static_cast<size_t>(m)].maxCoeff();
    }
    return bs;
}

double average_energy_per_cell(const Eigen::VectorXd& sorted_eigenvalues, Index cells,
                               Index n_occ) {
    const Index take = n_occ * cells;
    if (take < 0 || take > sorted_eigenvalues.size())
        throw DimensionError("average_energy_per_cell: occupation exceeds spectrum size");
    return sorted_eigenvalues.head(take).sum() / static_cast<double>(cells);
}

}  // namespace latham
