// SPDX-License-Identifier: Apache-2.0
#include "latham/galerkin.hpp"

#include <algorithm>
#include <string>

namespace latham {

namespace {

// Sampling trim level: far tails that are numerically indistinguishable from
// zero are dropped so 1D dot products stay proportional to the support size.
constexpr double kTrimEps = 1e-280;

Index clamp_band(Index L0, Index L) { return std::min(L0, L - 1); }

}  // namespace

void LatticeSystem::validate() const {
    if (b <= 0.0) throw DimensionError("LatticeSystem: b must be positive");
    if (n < 1 || nbar < 1) throw DimensionError("LatticeSystem: n and nbar must be >= 1");
    if (quad_M < 1) throw DimensionError("LatticeSystem: quadrature half-count must be >= 1");
    for (Index l : L)
        if (l < 1) throw DimensionError("LatticeSystem: lattice counts must be >= 1");
    if (eps_ov <= 0.0) throw DimensionError("LatticeSystem: eps_ov must be positive");
    nuclei.validate();
    basis.validate();
    if (std::abs(nuclei.cell_size - b) > 1e-12 * b)
        throw DimensionError("LatticeSystem: nuclei cell size differs from b");
}

double laplace_block(const CanonicalTensor3& Gk, const CanonicalTensor3& Gm,
                     const std::array<Fem1D, 3>& fem) {
    if (Gk.rank() != 1 || Gm.rank() != 1)
        throw StructureError("laplace_block: arguments must be rank-1 basis tensors");
    if (!Gk.same_shape(Gm)) throw DimensionError("laplace_block: shape mismatch");
    std::array<double, 3> s{}, a{};
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        s[lu] = fem[lu].mass_form(Eigen::VectorXd(Gk.factor(l).col(0)),
                                  Eigen::VectorXd(Gm.factor(l).col(0)));
        a[lu] = fem[lu].stiffness_form(Eigen::VectorXd(Gk.factor(l).col(0)),
                                       Eigen::VectorXd(Gm.factor(l).col(0)));
    }
    const double w = Gk.weights()[0] * Gm.weights()[0];
    return w * (a[0] * s[1] * s[2] + s[0] * a[1] * s[2] + s[0] * s[1] * a[2]);
}

double mass_block(const CanonicalTensor3& Gk, const CanonicalTensor3& Gm,
                  const std::array<Fem1D, 3>& fem) {
    if (Gk.rank() != 1 || Gm.rank() != 1)
        throw StructureError("mass_block: arguments must be rank-1 basis tensors");
    if (!Gk.same_shape(Gm)) throw DimensionError("mass_block: shape mismatch");
    double out = Gk.weights()[0] * Gm.weights()[0];
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        out *= fem[lu].mass_form(Eigen::VectorXd(Gk.factor(l).col(0)),
                                 Eigen::VectorXd(Gm.factor(l).col(0)));
    }
    return out;
}

double nuclear_block(const CanonicalTensor3& Gk, const CanonicalTensor3& Gm,
                     const CanonicalTensor3& pot) {
    return inner(hadamard(Gk, Gm), pot);
}

namespace {

// ---------------------------------------------------------------------------
// shared assembly machinery
// ---------------------------------------------------------------------------

struct AssemblyContext {
    const LatticeSystem* sys = nullptr;
    bool periodic = false;
    Index L0 = 0;
    Index margin_cells = 0;  // extension of the supercell grids, in unit cells

    // per direction: band half width min(L0, L-1)
    std::array<Index, 3> band{};

    // pwc basis profiles at lattice cell 0 (extended-grid indices); cell k is
    // an index shift by k*n
    std::vector<std::array<Supported1D, 3>> pwc;
    // pwl profiles, shift k*nbar
    std::vector<std::array<Supported1D, 3>> pwl;
    std::array<Fem1D, 3> fem;

    // nuclear potential factor panels per direction; wrapped directions hold
    // the n-periodic central-cell column addressed modulo n
    std::array<Eigen::MatrixXd, 3> pot;  // rows: extended grid / n, cols: rank
    std::array<bool, 3> tiled{};
    Eigen::VectorXd pot_weights;  // Z_nu * w_q per combined rank index

    // 1D form tables over the band, index delta + band[l]
    std::array<std::vector<Eigen::MatrixXd>, 3> massT, stiffT;
    // nuclear tables: box path depends on (k, delta), periodic only on delta
    // index: pair_idx * rank + r, each m0 x m0
    std::array<std::vector<Eigen::MatrixXd>, 3> nucT;

    Index pair_index(int dir, Index k, Index delta) const {
        const auto lu = static_cast<size_t>(dir);
        const Index width = 2 * band[lu] + 1;
        return periodic ? (delta + band[lu]) : (k * width + delta + band[lu]);
    }
};

double dot3(const Supported1D& a, Index shiftA, const Supported1D& b, Index shiftB,
            const Eigen::MatrixXd& p, Index col, bool tiled, Index tile_n) {
    const Index offA = a.offset + shiftA;
    const Index offB = b.offset + shiftB;
    Index lo = std::max(offA, offB);
    Index hi = std::min(offA + a.values.size(), offB + b.values.size());
    if (!tiled) {
        lo = std::max<Index>(lo, 0);
        hi = std::min<Index>(hi, p.rows());
    }
    double s = 0.0;
    for (Index i = lo; i < hi; ++i) {
        const double pv = tiled ? p(i % tile_n, col) : p(i, col);
        s += a.values[i - offA] * b.values[i - offB] * pv;
    }
    return s;
}

void build_profiles(AssemblyContext& ctx) {
    const LatticeSystem& sys = *ctx.sys;
    const Index m0 = sys.m0();
    ctx.pwc.resize(static_cast<size_t>(m0));
    ctx.pwl.resize(static_cast<size_t>(m0));
    for (Index m = 0; m < m0; ++m) {
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            const Index cells = sys.L[lu] + 2 * ctx.margin_cells;
            ctx.pwc[static_cast<size_t>(m)][lu] =
                sample_gto_1d(sys.basis.functions[static_cast<size_t>(m)], l, cells * sys.n,
                              sys.h(), ctx.margin_cells, sys.n, sys.b, 0.5, kTrimEps);
            ctx.pwl[static_cast<size_t>(m)][lu] =
                sample_gto_1d(sys.basis.functions[static_cast<size_t>(m)], l, cells * sys.nbar,
                              sys.hbar(), ctx.margin_cells, sys.nbar, sys.b, 0.0, kTrimEps);
        }
    }
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        const Index cells = sys.L[lu] + 2 * ctx.margin_cells;
        ctx.fem[lu] = fem_1d(cells * sys.nbar, sys.hbar());
    }
}

void build_potential(AssemblyContext& ctx) {
    const LatticeSystem& sys = *ctx.sys;
    const SincQuadrature quad = build_sinc_quadrature(sys.quad_M);
    const double h = sys.h();

    if (!ctx.periodic) {
        const auto grids = master_grids_box(sys.n, h, sys.L, ctx.margin_cells);
        const CanonicalTensor3 master = newton_master_tensor(grids, quad);
        const CanonicalTensor3 lat =
            lattice_potential_box(master, sys.nuclei, sys.L, sys.n, h, ctx.margin_cells);
        for (int l = 0; l < 3; ++l) {
            ctx.pot[static_cast<size_t>(l)] = lat.factor(l);
            ctx.tiled[static_cast<size_t>(l)] = false;
        }
        ctx.pot_weights = lat.weights();
        return;
    }

    // periodic: wrapped directions (L > 1) take the n-periodic central-cell
    // column; open directions (L == 1) keep the margin-extended open window
    const auto grids_per = master_grids_periodic(sys.n, h, sys.L);
    const CanonicalTensor3 master_per = newton_master_tensor(grids_per, quad);
    const CanonicalTensor3 cell =
        lattice_potential_periodic_cell(master_per, sys.nuclei, sys.L, sys.n, h);

    const bool any_open = sys.L[0] == 1 || sys.L[1] == 1 || sys.L[2] == 1;
    CanonicalTensor3 open;
    if (any_open) {
        // open-direction factors are single-cell windows; a unit lattice is
        // enough since the canonical factors are independent per direction
        const std::array<Index, 3> ones{1, 1, 1};
        const auto grids_box = master_grids_box(sys.n, h, ones, ctx.margin_cells);
        const CanonicalTensor3 master_box = newton_master_tensor(grids_box, quad);
        open = lattice_potential_box(master_box, sys.nuclei, ones, sys.n, h, ctx.margin_cells);
    }

    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        if (sys.L[lu] > 1) {
            ctx.pot[lu] = cell.factor(l);
            ctx.tiled[lu] = true;
        } else {
            ctx.pot[lu] = open.factor(l);
            ctx.tiled[lu] = false;
        }
    }
    ctx.pot_weights = cell.weights();
}

void build_tables(AssemblyContext& ctx, OperatorKind which) {
    const LatticeSystem& sys = *ctx.sys;
    const Index m0 = sys.m0();
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        ctx.band[lu] = clamp_band(ctx.L0, sys.L[lu]);
        const Index width = 2 * ctx.band[lu] + 1;

        if (which != OperatorKind::Nuclear) {
            ctx.massT[lu].assign(static_cast<size_t>(width), Eigen::MatrixXd(m0, m0));
            ctx.stiffT[lu].assign(static_cast<size_t>(width), Eigen::MatrixXd(m0, m0));
            for (Index d = -ctx.band[lu]; d <= ctx.band[lu]; ++d) {
                Eigen::MatrixXd ms(m0, m0), st(m0, m0);
                for (Index mu = 0; mu < m0; ++mu)
                    for (Index nu = 0; nu < m0; ++nu) {
                        Supported1D a = ctx.pwl[static_cast<size_t>(mu)][lu];
                        Supported1D bb = ctx.pwl[static_cast<size_t>(nu)][lu];
                        bb.offset += d * sys.nbar;
                        ms(mu, nu) = ctx.fem[lu].mass_form(a, bb);
                        st(mu, nu) = ctx.fem[lu].stiffness_form(a, bb);
                    }
                ctx.massT[lu][static_cast<size_t>(d + ctx.band[lu])] = std::move(ms);
                ctx.stiffT[lu][static_cast<size_t>(d + ctx.band[lu])] = std::move(st);
            }
        } else {
            const Index rank = ctx.pot_weights.size();
            const Index kk = ctx.periodic ? 1 : sys.L[lu];
            ctx.nucT[lu].assign(static_cast<size_t>(kk * width * rank),
                                Eigen::MatrixXd::Zero(m0, m0));
            for (Index k = 0; k < kk; ++k) {
                for (Index d = -ctx.band[lu]; d <= ctx.band[lu]; ++d) {
                    const Index m_cell = k + d;
                    if (!ctx.periodic && (m_cell < 0 || m_cell >= sys.L[lu])) continue;
                    const Index pair = ctx.pair_index(l, k, d);
                    for (Index r = 0; r < rank; ++r) {
                        Eigen::MatrixXd blk(m0, m0);
                        for (Index mu = 0; mu < m0; ++mu)
                            for (Index nu = 0; nu < m0; ++nu)
                                blk(mu, nu) = dot3(
                                    ctx.pwc[static_cast<size_t>(mu)][lu],
                                    (ctx.periodic ? 0 : k) * sys.n,
                                    ctx.pwc[static_cast<size_t>(nu)][lu],
                                    (ctx.periodic ? d : m_cell) * sys.n, ctx.pot[lu], r,
                                    ctx.tiled[lu], sys.n);
                        ctx.nucT[lu][static_cast<size_t>(pair * rank + r)] = std::move(blk);
                    }
                }
            }
        }
    }
}

Eigen::MatrixXd combine_block(const AssemblyContext& ctx, OperatorKind which,
                              const std::array<Index, 3>& k, const std::array<Index, 3>& d) {
    const Index m0 = ctx.sys->m0();
    if (which == OperatorKind::Mass) {
        return ctx.massT[0][static_cast<size_t>(d[0] + ctx.band[0])]
            .cwiseProduct(ctx.massT[1][static_cast<size_t>(d[1] + ctx.band[1])])
            .cwiseProduct(ctx.massT[2][static_cast<size_t>(d[2] + ctx.band[2])]);
    }
    if (which == OperatorKind::Laplace) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m0, m0);
        for (int dir = 0; dir < 3; ++dir) {
            Eigen::MatrixXd term = Eigen::MatrixXd::Ones(m0, m0);
            for (int l = 0; l < 3; ++l) {
                const auto lu = static_cast<size_t>(l);
                const auto& tbl = (l == dir) ? ctx.stiffT[lu] : ctx.massT[lu];
                term = term.cwiseProduct(tbl[static_cast<size_t>(d[lu] + ctx.band[lu])]);
            }
            out += term;
        }
        return out;
    }
    const Index rank = ctx.pot_weights.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m0, m0);
    for (Index r = 0; r < rank; ++r) {
        const Eigen::MatrixXd& t1 =
            ctx.nucT[0][static_cast<size_t>(ctx.pair_index(0, k[0], d[0]) * rank + r)];
        const Eigen::MatrixXd& t2 =
            ctx.nucT[1][static_cast<size_t>(ctx.pair_index(1, k[1], d[1]) * rank + r)];
        const Eigen::MatrixXd& t3 =
            ctx.nucT[2][static_cast<size_t>(ctx.pair_index(2, k[2], d[2]) * rank + r)];
        out += ctx.pot_weights[r] * t1.cwiseProduct(t2).cwiseProduct(t3);
    }
    return out;
}

AssemblyContext make_context(const LatticeSystem& sys, bool periodic, OperatorKind which) {
    sys.validate();
    AssemblyContext ctx;
    ctx.sys = &sys;
    ctx.periodic = periodic;
    ctx.L0 = overlap_constant(sys.basis, sys.b, sys.n, sys.eps_ov);
    ctx.margin_cells = ctx.L0 + 2;
    if (periodic)
        for (int l = 0; l < 3; ++l) {
            const Index Ll = sys.L[static_cast<size_t>(l)];
            if (Ll > 1 && Ll <= 2 * ctx.L0)
                throw StructureError(
                    "assemble_periodic: L" + std::to_string(l + 1) + " = " + std::to_string(Ll) +
                    " must exceed 2*L0 = " + std::to_string(2 * ctx.L0) +
                    " or generating blocks alias their wrap images");
        }
    build_profiles(ctx);
    if (which == OperatorKind::Nuclear) build_potential(ctx);
    build_tables(ctx, which);
    return ctx;
}

}  // namespace

AssembledOperator assemble_box(const LatticeSystem& sys, OperatorKind which) {
    AssemblyContext ctx = make_context(sys, false, which);
    const Index m0 = sys.m0();
    const Index cells = sys.lattice_count();
    const Index Nb = sys.basis_count();

    AssembledOperator op;
    op.which = which;
    op.periodic = false;
    op.m0 = m0;
    op.L = sys.L;
    op.overlap_L0 = ctx.L0;
    op.coefficient_rank = which == OperatorKind::Mass      ? 1
                          : which == OperatorKind::Laplace ? 3
                                                           : ctx.pot_weights.size();
    op.dense = Eigen::MatrixXd::Zero(Nb, Nb);

    const Index max_row_blocks =
        (2 * ctx.L0 + 1) * (2 * ctx.L0 + 1) * (2 * ctx.L0 + 1);
    for (Index lin = 0; lin < cells; ++lin) {
        const std::array<Index, 3> k{lin / (sys.L[1] * sys.L[2]), (lin / sys.L[2]) % sys.L[1],
                                     lin % sys.L[2]};
        Index row_blocks = 0;
        std::array<Index, 3> d{};
        for (d[0] = -ctx.band[0]; d[0] <= ctx.band[0]; ++d[0]) {
            for (d[1] = -ctx.band[1]; d[1] <= ctx.band[1]; ++d[1]) {
                for (d[2] = -ctx.band[2]; d[2] <= ctx.band[2]; ++d[2]) {
                    std::array<Index, 3> m{};
                    bool in_range = true;
                    for (int l = 0; l < 3; ++l) {
                        const auto lu = static_cast<size_t>(l);
                        m[lu] = k[lu] + d[lu];
                        in_range = in_range && m[lu] >= 0 && m[lu] < sys.L[lu];
                    }
                    if (!in_range) continue;
                    const Index mlin = (m[0] * sys.L[1] + m[1]) * sys.L[2] + m[2];
                    op.dense.block(lin * m0, mlin * m0, m0, m0) =
                        combine_block(ctx, which, k, d);
                    ++row_blocks;
                }
            }
        }
        if (row_blocks > max_row_blocks)
            throw StructureError("assemble_box: block row " + std::to_string(lin) +
                                 " exceeds the (2 L0 + 1)^3 band bound");
    }
    return op;
}

AssembledOperator assemble_periodic(const LatticeSystem& sys, OperatorKind which) {
    AssemblyContext ctx = make_context(sys, true, which);
    const Index m0 = sys.m0();

    AssembledOperator op;
    op.which = which;
    op.periodic = true;
    op.m0 = m0;
    op.L = sys.L;
    op.overlap_L0 = ctx.L0;
    op.gen = GeneratingBlockTensor(3, sys.L, m0);

    // generating blocks at circulant index delta mod L, |delta_l| <= band
    std::array<Index, 3> d{};
    Index distinct_mag = 0;
    for (d[0] = -ctx.band[0]; d[0] <= ctx.band[0]; ++d[0]) {
        for (d[1] = -ctx.band[1]; d[1] <= ctx.band[1]; ++d[1]) {
            for (d[2] = -ctx.band[2]; d[2] <= ctx.band[2]; ++d[2]) {
                Eigen::MatrixXd blk = combine_block(ctx, which, {0, 0, 0}, d);
                std::array<Index, 3> kidx{};
                for (int l = 0; l < 3; ++l) {
                    const auto lu = static_cast<size_t>(l);
                    kidx[lu] = ((d[lu] % sys.L[lu]) + sys.L[lu]) % sys.L[lu];
                }
                if (d[0] >= 0 && d[1] >= 0 && d[2] >= 0) ++distinct_mag;
                op.gen.set_block(kidx, std::move(blk));
            }
        }
    }
    const Index bound = (ctx.L0 + 1) * (ctx.L0 + 1) * (ctx.L0 + 1);
    if (distinct_mag > bound)
        throw StructureError(
            "assemble_periodic: distinct offset magnitudes exceed the (L0+1)^3 bound");

    // separable coefficient metadata
    const Index rank = which == OperatorKind::Mass      ? 1
                       : which == OperatorKind::Laplace ? 3
                                                        : ctx.pot_weights.size();
    op.coefficient_rank = rank;
    for (Index r = 0; r < rank; ++r) {
        SeparableTerm term;
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            const Index Ll = sys.L[lu];
            term.level_blocks[lu].assign(static_cast<size_t>(Ll),
                                         Eigen::MatrixXd::Zero(m0, m0));
            for (Index dd = -ctx.band[lu]; dd <= ctx.band[lu]; ++dd) {
                if (Ll == 1 && dd != 0) continue;
                const Index kidx = ((dd % Ll) + Ll) % Ll;
                Eigen::MatrixXd blk;
                if (which == OperatorKind::Mass) {
                    blk = ctx.massT[lu][static_cast<size_t>(dd + ctx.band[lu])];
                } else if (which == OperatorKind::Laplace) {
                    blk = (l == static_cast<int>(r) ? ctx.stiffT : ctx.massT)[lu]
                        [static_cast<size_t>(dd + ctx.band[lu])];
                } else {
                    blk = ctx.nucT[lu][static_cast<size_t>(ctx.pair_index(l, 0, dd) * ctx.pot_weights.size() + r)];
                    if (l == 0) blk *= ctx.pot_weights[r];
                }
                term.level_blocks[lu][static_cast<size_t>(kidx)] = std::move(blk);
            }
        }
        op.separable.push_back(std::move(term));
    }
    return op;
}

double separable_residual(const AssembledOperator& op) {
    if (!op.periodic) throw StructureError("separable_residual: box operators carry no metadata");
    if (op.separable.empty()) throw StructureError("separable_residual: no metadata present");
    FactorizedDiagonalizer fd(3, op.L, op.m0, op.separable);
    const GeneratingBlockTensor expanded = fd.expand();
    double resid = 0.0;
    const Index total = op.gen.lattice_count();
    for (Index lin = 0; lin < total; ++lin) {
        const std::array<Index, 3> k{lin / (op.L[1] * op.L[2]), (lin / op.L[2]) % op.L[1],
                                     lin % op.L[2]};
        resid = std::max(resid,
                         (op.gen.block_or_zero(k) - expanded.block_or_zero(k))
                             .cwiseAbs()
                             .maxCoeff());
    }
    return resid;
}

DefectReport box_circulant_defect(const LatticeSystem& sys) {
    const AssembledOperator box = assemble_box(sys, OperatorKind::Nuclear);
    const AssembledOperator per = assemble_periodic(sys, OperatorKind::Nuclear);
    const Eigen::MatrixXd per_dense =
        bc_to_dense(BlockCirculant{per.gen}, std::max<Index>(kDefaultDenseCap, box.dense.rows()));
    DefectReport rep;
    rep.defect = box.dense - per_dense;
    rep.relative_fro = rep.defect.norm() / box.dense.norm();
    return rep;
}

}  // namespace latham
