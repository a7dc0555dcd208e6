// SPDX-License-Identifier: Apache-2.0
#include "latham/sinc_quadrature.hpp"

#include <cmath>
#include <numbers>

namespace latham {

SincQuadrature build_sinc_quadrature(Index M) {
    if (M < 1) throw DimensionError("build_sinc_quadrature: M must be >= 1");
    SincQuadrature q;
    q.half_count = M;
    q.step = std::log(static_cast<double>(M)) / static_cast<double>(M);
    if (M == 1) q.step = 0.5;  // log(1) = 0 degenerates; one-off fallback
    const Index R = 2 * M + 1;
    q.nodes.resize(R);
    q.weights.resize(R);
    const double c = 2.0 * q.step / std::sqrt(std::numbers::pi);
    for (Index i = 0; i < R; ++i) {
        const double u = static_cast<double>(i - M) * q.step;
        const double eu = std::exp(-u);
        const double t = std::exp(u - eu);
        q.nodes[i] = t;
        // w = c * t * (1 + exp(-u)), written as c*(t + exp(-exp(-u))) to stay
        // finite when exp(-u) overflows the product form
        q.weights[i] = c * (t + std::exp(-eu));
    }
    return q;
}

double SincQuadrature::evaluate(double z) const {
    double s = 0.0;
    for (Index i = 0; i < nodes.size(); ++i) {
        const double tz = nodes[i] * z;
        s += weights[i] * std::exp(-tz * tz);
    }
    return s;
}

double SincQuadrature::relative_error(double z) const {
    return std::abs(evaluate(z) - 1.0 / z) * z;
}

}  // namespace latham
