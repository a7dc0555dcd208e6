// SPDX-License-Identifier: Apache-2.0
#include "latham/gto_basis.hpp"

#include <cmath>
#include <string>

namespace latham {

double GtoFunction::eval1d(int dir, double x) const {
    const double d = x - center[static_cast<size_t>(dir)];
    double mono = 1.0;
    for (int p = 0; p < degrees[static_cast<size_t>(dir)]; ++p) mono *= d;
    return mono * std::exp(-exponent * d * d);
}

void GtoBasis::validate() const {
    if (functions.empty()) throw StructureError("GtoBasis: no functions");
    for (const auto& fn : functions) {
        if (fn.exponent <= 0.0) throw StructureError("GtoBasis: exponents must be positive");
        for (int d : fn.degrees)
            if (d < 0) throw StructureError("GtoBasis: monomial degrees must be >= 0");
    }
}

Eigen::VectorXd Supported1D::to_full(Index n) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    out.segment(offset, values.size()) = values;
    return out;
}

Supported1D sample_gto_1d(const GtoFunction& fn, int dir, Index grid_n, double step,
                          Index cell_index, Index per_cell, double b, double align,
                          double eps) {
    // evaluate against the relative index so translating by whole cells is an
    // exact index shift
    Eigen::VectorXd full(grid_n);
    const Index base = cell_index * per_cell;
    for (Index i = 0; i < grid_n; ++i) {
        const double x = (static_cast<double>(i - base) + align) * step - 0.5 * b;
        full[i] = fn.eval1d(dir, x);
    }
    Index lo = 0, hi = grid_n;
    while (lo < hi && std::abs(full[lo]) < eps) ++lo;
    while (hi > lo && std::abs(full[hi - 1]) < eps) --hi;
    if (lo == hi) return Supported1D{0, Eigen::VectorXd::Zero(0)};
    return Supported1D{lo, full.segment(lo, hi - lo)};
}

namespace {

SampledBasis sample_impl(const GtoBasis& basis, const std::array<Grid1D, 3>& grids,
                         const std::array<Index, 3>& cell_index, Index per_cell, double b,
                         double eps_ov, double align) {
    basis.validate();
    SampledBasis out;
    for (const auto& fn : basis.functions) {
        std::array<Eigen::VectorXd, 3> cols;
        for (int l = 0; l < 3; ++l) {
            const auto lu = static_cast<size_t>(l);
            const Grid1D& g = grids[lu];
            const Supported1D s =
                sample_gto_1d(fn, l, g.n, g.h, cell_index[lu], per_cell, b, align, 0.0);
            cols[lu] = s.to_full(g.n);
            out.max_edge_value = std::max(
                out.max_edge_value, std::max(std::abs(cols[lu][0]), std::abs(cols[lu][g.n - 1])));
        }
        out.tensors.push_back(CanonicalTensor3::rank_one(cols[0], cols[1], cols[2]));
    }
    out.truncation_warning = out.max_edge_value > eps_ov;
    return out;
}

}  // namespace

SampledBasis sample_basis_pwc(const GtoBasis& basis, const std::array<Grid1D, 3>& grids,
                              const std::array<Index, 3>& cell_index, Index n_per_cell,
                              double b, double eps_ov) {
    return sample_impl(basis, grids, cell_index, n_per_cell, b, eps_ov, 0.5);
}

SampledBasis sample_basis_pwl(const GtoBasis& basis, const std::array<Grid1D, 3>& grids,
                              const std::array<Index, 3>& cell_index, Index nbar_per_cell,
                              double b, double eps_ov) {
    return sample_impl(basis, grids, cell_index, nbar_per_cell, b, eps_ov, 0.0);
}

Index overlap_constant(const GtoBasis& basis, double b, Index n, double eps_ov) {
    basis.validate();
    if (n < 1 || b <= 0.0) throw DimensionError("overlap_constant: need n >= 1, b > 0");
    const double h = b / static_cast<double>(n);
    constexpr Index kMaxL0 = 256;
    // profiles on a wide line, function in cell kMax (centered)
    const Index width = 2 * (kMaxL0 + 2) * n;
    std::vector<std::array<Supported1D, 3>> prof(basis.functions.size());
    for (size_t m = 0; m < basis.functions.size(); ++m)
        for (int l = 0; l < 3; ++l)
            prof[m][static_cast<size_t>(l)] =
                sample_gto_1d(basis.functions[m], l, width, h, kMaxL0 + 2, n, b, 0.5, 0.0);
    Index L0 = 0;
    Index misses = 0;
    for (Index s = 1; s <= kMaxL0 && misses < 2; ++s) {
        double worst = 0.0;
        for (size_t mu = 0; mu < basis.functions.size(); ++mu) {
            for (size_t nu = 0; nu < basis.functions.size(); ++nu) {
                for (int l = 0; l < 3; ++l) {
                    const Supported1D& a = prof[mu][static_cast<size_t>(l)];
                    const Supported1D& c = prof[nu][static_cast<size_t>(l)];
                    // shift nu by s cells
                    const Index off = c.offset + s * n;
                    const Index lo = std::max(a.offset, off);
                    const Index hi = std::min(a.end(), off + c.values.size());
                    for (Index i = lo; i < hi; ++i)
                        worst = std::max(worst,
                                         std::abs(a.values[i - a.offset] * c.values[i - off]));
                }
            }
        }
        if (worst >= eps_ov) {
            L0 = s;
            misses = 0;
        } else {
            ++misses;
        }
    }
    return L0;
}

}  // namespace latham
