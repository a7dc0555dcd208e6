// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "latham/errors.hpp"

namespace latham {

using Index = std::int64_t;

/// Uniform 1D grid. `kind` selects whether samples live at nodes
/// (x_i = origin + i*h) or at cell midpoints (x_i = origin + (i+1/2)*h).
struct Grid1D {
    enum class Kind { Node, CellMidpoint };

    Index n = 0;          ///< number of nodes / cells
    double h = 0.0;       ///< mesh size
    double origin = 0.0;  ///< coordinate of the left grid boundary
    Kind kind = Kind::CellMidpoint;

    Grid1D() = default;
    Grid1D(Index n_, double h_, double origin_, Kind kind_ = Kind::CellMidpoint)
        : n(n_), h(h_), origin(origin_), kind(kind_) {
        if (n < 1 || h <= 0.0) throw DimensionError("Grid1D: need n >= 1 and h > 0");
    }

    /// Grid centered at the origin with n cells of size h.
    static Grid1D centered_cells(Index n, double h) {
        return Grid1D(n, h, -0.5 * static_cast<double>(n) * h, Kind::CellMidpoint);
    }

    double point(Index i) const {
        return origin + (kind == Kind::Node ? static_cast<double>(i)
                                            : static_cast<double>(i) + 0.5) * h;
    }
    double left_edge(Index i) const { return origin + static_cast<double>(i) * h; }
    double length() const { return static_cast<double>(n) * h; }
};

}  // namespace latham
