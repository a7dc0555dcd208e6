// SPDX-License-Identifier: Apache-2.0
#include "latham/fem1d.hpp"

namespace latham {

namespace {

double tri_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double lo, double diag,
                bool wrap) {
    const Index n = u.size();
    double s = diag * u.dot(v);
    for (Index i = 0; i + 1 < n; ++i) s += lo * (u[i] * v[i + 1] + u[i + 1] * v[i]);
    if (wrap && n > 1) s += lo * (u[n - 1] * v[0] + u[0] * v[n - 1]);
    return s;
}

// Quadratic form over index-aligned supported vectors; loops run over global
// indices so translated pairs accumulate in the same order.
double tri_form(const Supported1D& u, const Supported1D& v, double lo, double diag) {
    const Index lo_i = std::max(u.offset, v.offset - 1);
    const Index hi_i = std::min(u.end(), v.end() + 1);
    double s = 0.0;
    for (Index i = lo_i; i < hi_i; ++i) {
        const double ui = u.values[i - u.offset];
        double row = 0.0;
        if (i - 1 >= v.offset && i - 1 < v.end()) row += lo * v.values[i - 1 - v.offset];
        if (i >= v.offset && i < v.end()) row += diag * v.values[i - v.offset];
        if (i + 1 >= v.offset && i + 1 < v.end()) row += lo * v.values[i + 1 - v.offset];
        s += ui * row;
    }
    return s;
}

}  // namespace

double Fem1D::stiffness_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    if (u.size() != n || v.size() != n) throw DimensionError("Fem1D: vector length != n");
    return tri_form(u, v, stiffness_lo(), stiffness_diag(), periodic);
}

double Fem1D::mass_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    if (u.size() != n || v.size() != n) throw DimensionError("Fem1D: vector length != n");
    return tri_form(u, v, mass_lo(), mass_diag(), periodic);
}

double Fem1D::stiffness_form(const Supported1D& u, const Supported1D& v) const {
    return tri_form(u, v, stiffness_lo(), stiffness_diag());
}

double Fem1D::mass_form(const Supported1D& u, const Supported1D& v) const {
    return tri_form(u, v, mass_lo(), mass_diag());
}

Eigen::MatrixXd Fem1D::stiffness_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        m(i, i) = stiffness_diag();
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = stiffness_lo();
    }
    if (periodic && n > 1) {
        m(0, n - 1) += stiffness_lo();
        m(n - 1, 0) += stiffness_lo();
    }
    return m;
}

Eigen::MatrixXd Fem1D::mass_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        m(i, i) = mass_diag();
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = mass_lo();
    }
    if (periodic && n > 1) {
        m(0, n - 1) += mass_lo();
        m(n - 1, 0) += mass_lo();
    }
    return m;
}

Fem1D fem_1d(Index n, double h) {
    if (n < 1 || h <= 0.0) throw DimensionError("fem_1d: need n >= 1 and h > 0");
    return Fem1D{n, h, false};
}

Fem1D fem_1d_periodic(Index n, double h) {
    if (n < 1 || h <= 0.0) throw DimensionError("fem_1d_periodic: need n >= 1 and h > 0");
    return Fem1D{n, h, true};
}

}  // namespace latham
