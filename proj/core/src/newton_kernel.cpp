// SPDX-License-Identifier: Apache-2.0
#include "latham/newton_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace latham {

void NucleiSet::validate() const {
    if (cell_size <= 0.0) throw DimensionError("NucleiSet: cell size must be positive");
    if (nuclei.empty()) throw StructureError("NucleiSet: no nuclei");
    for (const auto& nuc : nuclei) {
        if (nuc.charge <= 0.0) throw StructureError("NucleiSet: charges must be positive");
        for (double a : nuc.position)
            if (std::abs(a) > 0.5 * cell_size)
                throw BoundsError("NucleiSet: nucleus outside the unit cell");
    }
}

CanonicalTensor3 newton_master_tensor(const std::array<Grid1D, 3>& grids,
                                      const SincQuadrature& quad) {
    const Index R = quad.rank();
    std::array<Eigen::MatrixXd, 3> factors;
    for (int l = 0; l < 3; ++l) {
        const Grid1D& g = grids[static_cast<size_t>(l)];
        if (std::abs(g.origin + 0.5 * g.length()) > 1e-12 * g.h)
            throw StructureError("newton_master_tensor: grid not centered at the origin");
        Eigen::MatrixXd f(g.n, R);
        const double sqrt_pi = std::sqrt(std::numbers::pi);
        for (Index q = 0; q < R; ++q) {
            const double t = quad.nodes[q];
            const double c = sqrt_pi / (2.0 * t);
            double e_left = std::erf(t * g.left_edge(0));
            for (Index i = 0; i < g.n; ++i) {
                const double e_right = std::erf(t * g.left_edge(i + 1));
                f(i, q) = c * (e_right - e_left);
                e_left = e_right;
            }
        }
        factors[static_cast<size_t>(l)] = std::move(f);
    }
    return CanonicalTensor3(std::move(factors), quad.weights);
}

std::array<Grid1D, 3> master_grids_unit(Index n, double h, Index n0) {
    if (2 * n0 < n)
        throw DimensionError("master_grids_unit: need n0 >= n/2 to cover in-cell shifts");
    const Grid1D g = Grid1D::centered_cells(n + 2 * n0, h);
    return {g, g, g};
}

std::array<Grid1D, 3> master_grids_box(Index n, double h, const std::array<Index, 3>& L,
                                       Index margin_cells) {
    std::array<Grid1D, 3> out;
    for (int l = 0; l < 3; ++l) {
        const Index NL = n * L[static_cast<size_t>(l)];
        const Index win = NL + 2 * margin_cells * n;
        const Index shift_range = (NL + 1) / 2 + n;
        out[static_cast<size_t>(l)] = Grid1D::centered_cells(win + 2 * shift_range, h);
    }
    return out;
}

std::array<Grid1D, 3> master_grids_periodic(Index n, double h, const std::array<Index, 3>& L) {
    std::array<Grid1D, 3> out;
    for (int l = 0; l < 3; ++l) {
        const Index margin = n * (L[static_cast<size_t>(l)] / 2) + n;
        out[static_cast<size_t>(l)] = Grid1D::centered_cells(n + 2 * margin, h);
    }
    return out;
}

namespace {

// Window start for a source point at offset `a` (in length units) from the
// origin of a centered master with `master_n` cells, target window of
// `win_n` cells. Returns the snapped integer start; |snap| is the rounding
// error in grid units.
Index window_start(Index master_n, Index win_n, double a, double h, double* snap) {
    if ((master_n - win_n) % 2 != 0)
        throw StructureError("window_start: master and window sizes differ by an odd count");
    const double offset = a / h;
    const auto rounded = static_cast<Index>(std::llround(offset));
    if (snap) *snap = std::abs(offset - static_cast<double>(rounded));
    return (master_n - win_n) / 2 - rounded;
}

void check_window(Index start, Index win_n, Index master_n, const char* what) {
    if (start < 0 || start + win_n > master_n)
        throw BoundsError(std::string(what) + ": window [" + std::to_string(start) + ", " +
                          std::to_string(start + win_n) + ") outside master extent " +
                          std::to_string(master_n));
}

}  // namespace

CanonicalTensor3 nucleus_tensor(const CanonicalTensor3& master, const Nucleus& nucleus,
                                Index n, double h, double* snap_distance) {
    WindowSpec w;
    double max_snap = 0.0;
    for (int l = 0; l < 3; ++l) {
        double snap = 0.0;
        const Index start =
            window_start(master.dims()[static_cast<size_t>(l)], n, nucleus.position[static_cast<size_t>(l)], h, &snap);
        check_window(start, n, master.dims()[static_cast<size_t>(l)], "nucleus_tensor");
        w.shifts[static_cast<size_t>(l)] = start;
        w.sizes[static_cast<size_t>(l)] = n;
        max_snap = std::max(max_snap, snap * h);
    }
    if (snap_distance) *snap_distance = max_snap;
    return window(master, w).scaled(nucleus.charge);
}

namespace {

// Assembled potential windows for one nucleus: per direction, an arithmetic
// progression of window starts, one per lattice cell.
CanonicalTensor3 assemble_nucleus(const CanonicalTensor3& master, const Nucleus& nuc,
                                  const std::array<Index, 3>& L, Index n, double h,
                                  const std::array<Index, 3>& win_n, bool centered_offsets,
                                  const char* what) {
    std::array<std::vector<Index>, 3> shifts;
    std::array<Index, 3> sizes{};
    for (int l = 0; l < 3; ++l) {
        const auto lu = static_cast<size_t>(l);
        const Index Ll = L[lu];
        const Index master_n = master.dims()[lu];
        // lattice copy k sits at (k - (L-1)/2)*b for the box supercell, or at
        // integer offsets o*b around the central cell in the periodic model;
        // both are progressions with step n in grid units
        double base_a = nuc.position[lu];
        Index k_lo = 0;
        if (centered_offsets) {
            k_lo = -(Ll / 2);
        } else {
            base_a -= 0.5 * static_cast<double>(Ll - 1) * static_cast<double>(n) * h;
        }
        const Index base = window_start(master_n, win_n[lu], base_a, h, nullptr);
        std::vector<Index> s(static_cast<size_t>(Ll));
        for (Index k = 0; k < Ll; ++k)
            s[static_cast<size_t>(k)] = base - n * (k_lo + k);
        std::sort(s.begin(), s.end());
        check_window(s.front(), win_n[lu], master_n, what);
        check_window(s.back(), win_n[lu], master_n, what);
        shifts[lu] = std::move(s);
        sizes[lu] = win_n[lu];
    }
    return assembled_window_sum(master, shifts, sizes).scaled(nuc.charge);
}

}  // namespace

CanonicalTensor3 lattice_potential_box(const CanonicalTensor3& master, const NucleiSet& nuclei,
                                       const std::array<Index, 3>& L, Index n, double h,
                                       Index margin_cells) {
    nuclei.validate();
    const Index pad = 2 * margin_cells * n;
    const std::array<Index, 3> win{n * L[0] + pad, n * L[1] + pad, n * L[2] + pad};
    std::vector<CanonicalTensor3> per_nucleus;
    per_nucleus.reserve(nuclei.nuclei.size());
    for (const auto& nuc : nuclei.nuclei)
        per_nucleus.push_back(
            assemble_nucleus(master, nuc, L, n, h, win, false, "lattice_potential_box"));
    return concat_sum(per_nucleus);
}

CanonicalTensor3 lattice_potential_periodic_cell(const CanonicalTensor3& master,
                                                 const NucleiSet& nuclei,
                                                 const std::array<Index, 3>& L, Index n,
                                                 double h) {
    nuclei.validate();
    const std::array<Index, 3> win{n, n, n};
    std::vector<CanonicalTensor3> per_nucleus;
    per_nucleus.reserve(nuclei.nuclei.size());
    for (const auto& nuc : nuclei.nuclei)
        per_nucleus.push_back(
            assemble_nucleus(master, nuc, L, n, h, win, true, "lattice_potential_periodic_cell"));
    return concat_sum(per_nucleus);
}

}  // namespace latham
