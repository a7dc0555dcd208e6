// SPDX-License-Identifier: Apache-2.0
#include "latham/galerkin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"

namespace latham {
namespace {

using test::make_rng;
using test::max_abs_diff;

GtoBasis single_gaussian(double alpha) {
    GtoBasis b;
    b.functions.push_back(GtoFunction{{0, 0, 0}, alpha, {0, 0, 0}});
    return b;
}

LatticeSystem chain_system(Index L, double alpha, Index n = 8, Index nbar = 8,
                           Index M = 10, double b = 8.0) {
    LatticeSystem sys;
    sys.b = b;
    sys.L = {L, 1, 1};
    sys.n = n;
    sys.nbar = nbar;
    sys.quad_M = M;
    sys.nuclei = NucleiSet{b, {Nucleus{{0, 0, 0}, 1.0}}};
    sys.basis = single_gaussian(alpha);
    return sys;
}

TEST(SampleBasisPwc, LocalityOfTightGaussian) {
    const GtoBasis basis = single_gaussian(50.0);
    const std::array<Grid1D, 3> grids{Grid1D::centered_cells(24, 1.0),
                                      Grid1D::centered_cells(24, 1.0),
                                      Grid1D::centered_cells(24, 1.0)};
    // cell 1 of 3 (8 pwc cells per unit cell of size 8)
    const SampledBasis s = sample_basis_pwc(basis, grids, {1, 1, 1}, 8, 8.0, 1e-8);
    const Eigen::VectorXd col = s.tensors[0].factor(0).col(0);
    double outside = 0.0;
    for (Index i = 0; i < 24; ++i)
        if (i < 8 || i >= 16) outside = std::max(outside, std::abs(col[i]));
    EXPECT_GT(col.cwiseAbs().maxCoeff(), 0.5);
    EXPECT_LE(outside, 1e-10);
}

TEST(SampleBasisPwc, ShiftInvarianceIsExact) {
    const GtoBasis basis = single_gaussian(0.3);
    const std::array<Grid1D, 3> grids{Grid1D::centered_cells(32, 1.0),
                                      Grid1D::centered_cells(32, 1.0),
                                      Grid1D::centered_cells(32, 1.0)};
    const SampledBasis s0 = sample_basis_pwc(basis, grids, {1, 1, 1}, 8, 8.0, 1e-8);
    const SampledBasis s1 = sample_basis_pwc(basis, grids, {2, 1, 1}, 8, 8.0, 1e-8);
    const Eigen::VectorXd a = s0.tensors[0].factor(0).col(0);
    const Eigen::VectorXd b = s1.tensors[0].factor(0).col(0);
    for (Index i = 8; i < 32; ++i) EXPECT_EQ(b[i], a[i - 8]);
}

TEST(SampleBasisPwc, SelfOverlapMatchesErfIntegral) {
    const double alpha = 1.0, b = 8.0;
    const Index n = 64;
    const double h = b / n;
    const GtoBasis basis = single_gaussian(alpha);
    const std::array<Grid1D, 3> grids{Grid1D::centered_cells(n, h), Grid1D::centered_cells(n, h),
                                      Grid1D::centered_cells(n, h)};
    const SampledBasis s = sample_basis_pwc(basis, grids, {0, 0, 0}, n, b, 1e-8);
    const Eigen::VectorXd col = s.tensors[0].factor(0).col(0);
    // midpoint-rule integral of exp(-2 alpha x^2) against the exact value
    const double discrete = h * col.dot(col);
    const double exact = std::sqrt(std::numbers::pi / (2.0 * alpha)) *
                         std::erf(std::sqrt(2.0 * alpha) * 0.5 * b);
    EXPECT_LE(std::abs(discrete - exact), 1e-3);
}

TEST(SampleBasisPwc, TruncationWarning) {
    const GtoBasis wide = single_gaussian(0.005);
    const std::array<Grid1D, 3> grids{Grid1D::centered_cells(8, 1.0),
                                      Grid1D::centered_cells(8, 1.0),
                                      Grid1D::centered_cells(8, 1.0)};
    const SampledBasis s = sample_basis_pwc(wide, grids, {0, 0, 0}, 8, 8.0, 1e-8);
    EXPECT_TRUE(s.truncation_warning);
}

TEST(SampleBasisPwl, NearConstantSamplesToOnes) {
    const GtoBasis flat = single_gaussian(1e-14);
    const std::array<Grid1D, 3> grids{Grid1D::centered_cells(16, 0.5),
                                      Grid1D::centered_cells(16, 0.5),
                                      Grid1D::centered_cells(16, 0.5)};
    const SampledBasis s = sample_basis_pwl(flat, grids, {0, 0, 0}, 16, 8.0, 1e-8);
    const Eigen::VectorXd col = s.tensors[0].factor(0).col(0);
    for (Index i = 0; i < col.size(); ++i) EXPECT_NEAR(col[i], 1.0, 1e-10);
}

TEST(SampleBasisPwl, InterpolationErrorQuadraticInMesh) {
    // nodal interpolant of exp(-x^2): midpoint errors drop ~4x per refinement
    const GtoBasis g = single_gaussian(1.0);
    auto max_midpoint_err = [&](Index nbar) {
        const double h = 8.0 / static_cast<double>(nbar);
        const std::array<Grid1D, 3> grids{Grid1D::centered_cells(nbar, h),
                                          Grid1D::centered_cells(nbar, h),
                                          Grid1D::centered_cells(nbar, h)};
        const SampledBasis s = sample_basis_pwl(g, grids, {0, 0, 0}, nbar, 8.0, 1e-8);
        const Eigen::VectorXd col = s.tensors[0].factor(0).col(0);
        double err = 0.0;
        for (Index i = 0; i + 1 < nbar; ++i) {
            const double xm = -4.0 + (static_cast<double>(i) + 0.5) * h;
            const double interp = 0.5 * (col[i] + col[i + 1]);
            err = std::max(err, std::abs(interp - std::exp(-xm * xm)));
        }
        return err;
    };
    const double e32 = max_midpoint_err(32);
    const double e64 = max_midpoint_err(64);
    EXPECT_LT(e64, e32 / 3.0);
    EXPECT_GT(e64, e32 / 6.0);
}

TEST(Fem1dMatrices, TridiagonalFormulas) {
    const Fem1D fem = fem_1d(3, 0.5);
    const Eigen::MatrixXd A = fem.stiffness_dense();
    EXPECT_DOUBLE_EQ(A(0, 0), 4.0);
    EXPECT_DOUBLE_EQ(A(1, 1), 4.0);
    EXPECT_DOUBLE_EQ(A(0, 1), -2.0);
    const Eigen::MatrixXd S = fem.mass_dense();
    // interior row sum = h
    EXPECT_DOUBLE_EQ(S(1, 0) + S(1, 1) + S(1, 2), 0.5);
}

TEST(Fem1dMatrices, FormMatchesDense) {
    auto rng = make_rng(50);
    const Fem1D fem = fem_1d(12, 0.25);
    const Eigen::VectorXd u = test::random_matrix(rng, 12, 1).col(0);
    const Eigen::VectorXd v = test::random_matrix(rng, 12, 1).col(0);
    EXPECT_NEAR(fem.stiffness_form(u, v), u.dot(fem.stiffness_dense() * v), 1e-12);
    EXPECT_NEAR(fem.mass_form(u, v), u.dot(fem.mass_dense() * v), 1e-12);
    const Fem1D per = fem_1d_periodic(12, 0.25);
    EXPECT_NEAR(per.stiffness_form(u, v), u.dot(per.stiffness_dense() * v), 1e-12);
    EXPECT_NEAR(per.mass_form(u, v), u.dot(per.mass_dense() * v), 1e-12);
}

TEST(Fem1dMatrices, SupportedFormMatchesFull) {
    auto rng = make_rng(51);
    const Fem1D fem = fem_1d(20, 0.25);
    Supported1D a{3, test::random_matrix(rng, 6, 1).col(0)};
    Supported1D b{7, test::random_matrix(rng, 5, 1).col(0)};
    EXPECT_NEAR(fem.stiffness_form(a, b),
                fem.stiffness_form(a.to_full(20), b.to_full(20)), 1e-13);
    EXPECT_NEAR(fem.mass_form(a, b), fem.mass_form(a.to_full(20), b.to_full(20)), 1e-13);
}

TEST(Fem1dMatrices, StiffnessEigenvaluesAgainstDense) {
    const Fem1D fem = fem_1d(16, 0.5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fem.stiffness_dense());
    // P1 stiffness eigenvalues: (2/h)(1 - cos(k pi/(n+1)))
    for (Index k = 0; k < 16; ++k) {
        const double expect =
            (2.0 / 0.5) *
            (1.0 - std::cos(static_cast<double>(k + 1) * std::numbers::pi / 17.0));
        EXPECT_NEAR(es.eigenvalues()[k], expect, 1e-12);
    }
}

class BlockOracleTest : public ::testing::Test {
protected:
    static constexpr Index nbar = 8;
    static constexpr double h = 0.5;
    std::array<Fem1D, 3> fem{fem_1d(nbar, h), fem_1d(nbar, h), fem_1d(nbar, h)};

    CanonicalTensor3 sample(double alpha, std::array<double, 3> center) {
        GtoBasis b;
        b.functions.push_back(GtoFunction{center, alpha, {0, 0, 0}});
        const std::array<Grid1D, 3> grids{Grid1D::centered_cells(nbar, h),
                                          Grid1D::centered_cells(nbar, h),
                                          Grid1D::centered_cells(nbar, h)};
        return sample_basis_pwl(b, grids, {0, 0, 0}, nbar, nbar * h, 1e-8).tensors[0];
    }

    // dense Kronecker A3 = A x S x S + S x A x S + S x S x A
    Eigen::MatrixXd dense_A3() {
        const Eigen::MatrixXd A = fem[0].stiffness_dense();
        const Eigen::MatrixXd S = fem[0].mass_dense();
        auto kron3 = [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                        const Eigen::MatrixXd& Z) {
            const Index n = X.rows();
            Eigen::MatrixXd out(n * n * n, n * n * n);
            for (Index i1 = 0; i1 < n; ++i1)
                for (Index j1 = 0; j1 < n; ++j1)
                    for (Index i2 = 0; i2 < n; ++i2)
                        for (Index j2 = 0; j2 < n; ++j2)
                            out.block(i1 * n * n + i2 * n, j1 * n * n + j2 * n, n, n) =
                                X(i1, j1) * Y(i2, j2) * Z;
            return out;
        };
        return kron3(A, S, S) + kron3(S, A, S) + kron3(S, S, A);
    }
};

TEST_F(BlockOracleTest, LaplaceMatchesKroneckerDense) {
    const auto Gk = sample(0.7, {0.3, -0.2, 0.1});
    const auto Gm = sample(1.1, {-0.4, 0.2, 0.0});
    const Eigen::VectorXd gk = dense_materialize(Gk).values;
    const Eigen::VectorXd gm = dense_materialize(Gm).values;
    const double dense = gk.dot(dense_A3() * gm);
    const double fast = laplace_block(Gk, Gm, fem);
    EXPECT_LE(std::abs(fast - dense), 1e-12 * std::max(1.0, std::abs(dense)));
    EXPECT_NEAR(laplace_block(Gm, Gk, fem), fast, 1e-13 * std::max(1.0, std::abs(fast)));
}

TEST_F(BlockOracleTest, LaplaceDiagonalPositive) {
    const auto G = sample(0.9, {0, 0, 0});
    EXPECT_GT(laplace_block(G, G, fem), 0.0);
}

TEST_F(BlockOracleTest, MassMatchesKroneckerDense) {
    const auto Gk = sample(0.7, {0.3, -0.2, 0.1});
    const auto Gm = sample(1.1, {-0.4, 0.2, 0.0});
    const Eigen::VectorXd gk = dense_materialize(Gk).values;
    const Eigen::VectorXd gm = dense_materialize(Gm).values;
    const Eigen::MatrixXd S1 = fem[0].mass_dense();
    auto kron3 = [&](const Eigen::MatrixXd& X) {
        const Index n = X.rows();
        Eigen::MatrixXd out(n * n * n, n * n * n);
        for (Index i1 = 0; i1 < n; ++i1)
            for (Index j1 = 0; j1 < n; ++j1)
                for (Index i2 = 0; i2 < n; ++i2)
                    for (Index j2 = 0; j2 < n; ++j2)
                        out.block(i1 * n * n + i2 * n, j1 * n * n + j2 * n, n, n) =
                            X(i1, j1) * X(i2, j2) * X;
        return out;
    };
    const double dense = gk.dot(kron3(S1) * gm);
    EXPECT_LE(std::abs(mass_block(Gk, Gm, fem) - dense),
              1e-12 * std::max(1.0, std::abs(dense)));
    EXPECT_GT(mass_block(Gk, Gk, fem), 0.0);
}

TEST_F(BlockOracleTest, MassVanishesForFarSeparation) {
    const auto Gk = sample(30.0, {-1.8, 0, 0});
    const auto Gm = sample(30.0, {1.8, 0, 0});
    EXPECT_LE(std::abs(mass_block(Gk, Gm, fem)), 1e-12);
}

TEST(NuclearBlock, UnitPotentialReducesToPlainInner) {
    auto rng = make_rng(52);
    const auto Gk = test::random_tensor(rng, {6, 6, 6}, 1);
    const auto Gm = test::random_tensor(rng, {6, 6, 6}, 1);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(6);
    const auto unit = CanonicalTensor3::rank_one(ones, ones, ones);
    EXPECT_NEAR(nuclear_block(Gk, Gm, unit), inner(Gk, Gm),
                1e-13 * std::max(1.0, std::abs(inner(Gk, Gm))));
}

TEST(NuclearBlock, MatchesDenseTripleLoop) {
    const Index n = 16;
    const double h = 0.5, b = 8.0;
    GtoBasis basis;
    basis.functions.push_back(GtoFunction{{0.4, -0.7, 0.0}, 0.6, {0, 0, 0}});
    basis.functions.push_back(GtoFunction{{-0.5, 0.3, 0.2}, 1.2, {0, 0, 0}});
    const std::array<Grid1D, 3> grids{Grid1D::centered_cells(n, h), Grid1D::centered_cells(n, h),
                                      Grid1D::centered_cells(n, h)};
    const SampledBasis s = sample_basis_pwc(basis, grids, {0, 0, 0}, n, b, 1e-8);

    const NucleiSet nuclei{b, {Nucleus{{0.5, 0, 0}, 1.0}}};
    const auto mg = master_grids_unit(n, h, n);
    const CanonicalTensor3 pot =
        nucleus_tensor(newton_master_tensor(mg, build_sinc_quadrature(10)), nuclei.nuclei[0],
                       n, h);

    const double fast = nuclear_block(s.tensors[0], s.tensors[1], pot);
    const Eigen::VectorXd pv = dense_materialize(pot).values;
    const Eigen::VectorXd g0 = dense_materialize(s.tensors[0]).values;
    const Eigen::VectorXd g1 = dense_materialize(s.tensors[1]).values;
    double slow = 0.0;
    for (Index i = 0; i < pv.size(); ++i) slow += pv[i] * g0[i] * g1[i];
    EXPECT_LE(std::abs(fast - slow), 1e-12 * std::max(1.0, std::abs(slow)));
}

TEST(OverlapConstant, TightBasisHasSmallL0) {
    EXPECT_LE(overlap_constant(single_gaussian(5.0), 8.0, 8, 1e-8), 1);
}

TEST(OverlapConstant, MonotoneInEps) {
    const GtoBasis b = single_gaussian(0.05);
    const Index coarse = overlap_constant(b, 8.0, 8, 1e-4);
    const Index fine = overlap_constant(b, 8.0, 8, 1e-10);
    EXPECT_LE(coarse, fine);
}

TEST(OverlapConstant, MatchesBruteForceScan) {
    const double alpha = 1.0, b = 8.0;
    const Index n = 8;
    const GtoBasis basis = single_gaussian(alpha);
    const Index L0 = overlap_constant(basis, b, n, 1e-8);

    // direct scan: product of midpoint samples of the two shifted Gaussians
    const double h = b / n;
    Index expect = 0;
    for (Index s = 1; s <= 16; ++s) {
        double worst = 0.0;
        for (Index i = -200; i < 200; ++i) {
            const double x = (static_cast<double>(i) + 0.5) * h;
            const double g0 = std::exp(-alpha * x * x);
            const double xs = x - static_cast<double>(s) * b;
            worst = std::max(worst, g0 * std::exp(-alpha * xs * xs));
        }
        if (worst >= 1e-8) expect = s;
    }
    EXPECT_EQ(L0, expect);
}

TEST(AssembleBox, DegenerateLatticeSingleMolecule) {
    LatticeSystem sys = chain_system(1, 0.4);
    sys.basis.functions.push_back(GtoFunction{{1.0, 0, 0}, 0.8, {0, 0, 0}});
    const AssembledOperator mass = assemble_box(sys, OperatorKind::Mass);
    ASSERT_EQ(mass.dense.rows(), 2);
    EXPECT_GT(mass.dense(0, 0), 0.0);
    EXPECT_GT(mass.dense(1, 1), 0.0);
    EXPECT_NEAR(mass.dense(0, 1), mass.dense(1, 0), 1e-14);

    // cross-check entry (0,0) against the public block ops on the same grids
    const Index L0 = overlap_constant(sys.basis, sys.b, sys.n, sys.eps_ov);
    const Index mc = L0 + 2;
    const Index cells = 1 + 2 * mc;
    const std::array<Grid1D, 3> pwl_grids{
        Grid1D::centered_cells(cells * sys.nbar, sys.hbar()),
        Grid1D::centered_cells(cells * sys.nbar, sys.hbar()),
        Grid1D::centered_cells(cells * sys.nbar, sys.hbar())};
    const SampledBasis s =
        sample_basis_pwl(sys.basis, pwl_grids, {mc, mc, mc}, sys.nbar, sys.b, sys.eps_ov);
    const std::array<Fem1D, 3> fem{fem_1d(cells * sys.nbar, sys.hbar()),
                                   fem_1d(cells * sys.nbar, sys.hbar()),
                                   fem_1d(cells * sys.nbar, sys.hbar())};
    EXPECT_NEAR(mass.dense(0, 1), mass_block(s.tensors[0], s.tensors[1], fem),
                1e-12 * std::abs(mass.dense(0, 1)) + 1e-15);

    const AssembledOperator lap = assemble_box(sys, OperatorKind::Laplace);
    EXPECT_NEAR(lap.dense(0, 1), laplace_block(s.tensors[0], s.tensors[1], fem),
                1e-12 * std::abs(lap.dense(0, 1)) + 1e-15);
}

TEST(AssembleBox, NuclearMatchesPublicOps) {
    LatticeSystem sys = chain_system(1, 0.4, 8, 8, 8);
    const AssembledOperator nuc = assemble_box(sys, OperatorKind::Nuclear);
    ASSERT_EQ(nuc.dense.rows(), 1);

    const Index L0 = overlap_constant(sys.basis, sys.b, sys.n, sys.eps_ov);
    const Index mc = L0 + 2;
    const Index cells = 1 + 2 * mc;
    const std::array<Grid1D, 3> pwc_grids{Grid1D::centered_cells(cells * sys.n, sys.h()),
                                          Grid1D::centered_cells(cells * sys.n, sys.h()),
                                          Grid1D::centered_cells(cells * sys.n, sys.h())};
    const SampledBasis s =
        sample_basis_pwc(sys.basis, pwc_grids, {mc, mc, mc}, sys.n, sys.b, sys.eps_ov);
    const auto mg = master_grids_box(sys.n, sys.h(), {1, 1, 1}, mc);
    const CanonicalTensor3 pot = lattice_potential_box(
        newton_master_tensor(mg, build_sinc_quadrature(sys.quad_M)), sys.nuclei, {1, 1, 1},
        sys.n, sys.h(), mc);
    const double expect = nuclear_block(s.tensors[0], s.tensors[0], pot);
    EXPECT_LE(std::abs(nuc.dense(0, 0) - expect), 1e-12 * std::abs(expect));
}

TEST(AssembleBox, SymmetryAndBand) {
    LatticeSystem sys = chain_system(6, 0.05);
    sys.quad_M = 8;
    const AssembledOperator nuc = assemble_box(sys, OperatorKind::Nuclear);
    EXPECT_LE((nuc.dense - nuc.dense.transpose()).norm() / nuc.dense.norm(), 1e-13);
    // band: blocks beyond L0 are zero
    const Index L0 = nuc.overlap_L0;
    EXPECT_GE(L0, 1);
    for (Index k = 0; k < 6; ++k)
        for (Index m = 0; m < 6; ++m)
            if (std::abs(k - m) > L0) EXPECT_EQ(nuc.dense(k, m), 0.0);
}

TEST(AssembleBox, MassSpdLaplacePsd) {
    LatticeSystem sys = chain_system(4, 0.1);
    const AssembledOperator mass = assemble_box(sys, OperatorKind::Mass);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(mass.dense);
    EXPECT_GT(esm.eigenvalues().minCoeff(), 0.0);
    const AssembledOperator lap = assemble_box(sys, OperatorKind::Laplace);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esl(lap.dense);
    EXPECT_GE(esl.eigenvalues().minCoeff(), -1e-12 * esl.eigenvalues().maxCoeff());
}

TEST(AssemblePeriodic, GenSatisfiesCirculantSymmetry) {
    LatticeSystem sys = chain_system(6, 0.05);
    sys.quad_M = 8;
    for (OperatorKind which :
         {OperatorKind::Mass, OperatorKind::Laplace, OperatorKind::Nuclear}) {
        const AssembledOperator op = assemble_periodic(sys, which);
        EXPECT_TRUE(op.gen.is_symmetric_circulant(1e-13));
    }
}

TEST(AssemblePeriodic, SeparableMetadataReassembles) {
    LatticeSystem sys = chain_system(6, 0.05);
    sys.quad_M = 8;
    for (OperatorKind which :
         {OperatorKind::Mass, OperatorKind::Laplace, OperatorKind::Nuclear}) {
        const AssembledOperator op = assemble_periodic(sys, which);
        EXPECT_LE(separable_residual(op), 1e-13);
        const Index expect_rank = which == OperatorKind::Mass      ? 1
                                  : which == OperatorKind::Laplace ? 3
                                                                   : Index(17);
        EXPECT_EQ(op.coefficient_rank, expect_rank);
    }
}

TEST(AssemblePeriodic, BlocksBeyondL0Absent) {
    LatticeSystem sys = chain_system(8, 0.05);
    sys.quad_M = 6;
    const AssembledOperator op = assemble_periodic(sys, OperatorKind::Nuclear);
    const Index L0 = op.overlap_L0;
    for (const auto& [k, blk] : op.gen.stored()) {
        const Index d = k[0] <= 4 ? k[0] : 8 - k[0];  // signed offset magnitude
        EXPECT_LE(d, L0);
    }
    // storage bound
    EXPECT_LE(op.gen.stored_count(), 2 * L0 + 1);
}

TEST(AssemblePeriodic, WrapAliasThrows) {
    LatticeSystem sys = chain_system(2, 0.05);  // L0 = 3 for this basis
    EXPECT_THROW(assemble_periodic(sys, OperatorKind::Mass), StructureError);
}

TEST(AssemblePeriodic, MassLaplaceDefectConfinedToWrapBlocks) {
    LatticeSystem sys = chain_system(8, 0.05);
    const Index L0 = overlap_constant(sys.basis, sys.b, sys.n, sys.eps_ov);
    ASSERT_EQ(L0, 3);
    for (OperatorKind which : {OperatorKind::Mass, OperatorKind::Laplace}) {
        const AssembledOperator box = assemble_box(sys, which);
        const AssembledOperator per = assemble_periodic(sys, which);
        const Eigen::MatrixXd perd = bc_to_dense(BlockCirculant{per.gen});
        const Eigen::MatrixXd diff = box.dense - perd;
        const double scale = box.dense.cwiseAbs().maxCoeff();
        for (Index k = 0; k < 8; ++k)
            for (Index m = 0; m < 8; ++m) {
                const bool wrap = std::abs(k - m) > L0;  // periodic image entries
                if (!wrap)
                    EXPECT_LE(std::abs(diff(k, m)), 1e-13 * scale)
                        << "interior block (" << k << "," << m << ")";
            }
    }
}

TEST(BoxCirculantDefect, ConfinedWhenL0Zero) {
    LatticeSystem sys = chain_system(2, 1.0, 8, 8, 6);  // tight basis: L0 = 0
    const DefectReport rep = box_circulant_defect(sys);
    ASSERT_EQ(rep.defect.rows(), 2);
    // off-diagonal blocks are structurally zero in both assemblies
    EXPECT_EQ(rep.defect(0, 1), 0.0);
    EXPECT_EQ(rep.defect(1, 0), 0.0);
    EXPECT_GT(std::abs(rep.defect(0, 0)), 0.0);
    EXPECT_GT(rep.relative_fro, 0.0);
}

TEST(BoxCirculantDefect, DecreasesWithL) {
    double prev = 1e300;
    for (Index L : {8, 16}) {
        LatticeSystem sys = chain_system(L, 0.05);
        sys.quad_M = 8;
        const DefectReport rep = box_circulant_defect(sys);
        EXPECT_LT(rep.relative_fro, prev);
        prev = rep.relative_fro;
    }
}

}  // namespace
}  // namespace latham
