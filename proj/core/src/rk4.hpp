// rk4.hpp - fixed-step classical Runge-Kutta for linear systems.
#pragma once

#include "ptqs/errors.hpp"
#include "ptqs/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ptqs::detail {

/// RK4 for a linear system y' = L y. One classical RK4 step is exactly
/// y ← (I + hL + (hL)²/2 + (hL)³/6 + (hL)⁴/24) y, so the step matrix is formed
/// once per segment and each step costs a single matrix-vector product.
template <int D>
std::vector<Eigen::Matrix<cplx, D, 1>> rk4_linear_series(Eigen::Matrix<cplx, D, 1> y,
                                                         std::span<const double> times,
                                                         double dt,
                                                         const Eigen::Matrix<cplx, D, D>& l) {
    using Mat = Eigen::Matrix<cplx, D, D>;
    using Vec = Eigen::Matrix<cplx, D, 1>;
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::InvalidStep, "dt must be positive and finite");
    }
    std::vector<Vec> out;
    out.reserve(times.size());
    double now = 0.0;
    for (double target : times) {
        if (!(target >= now)) {
            throw Error(ErrorCode::InvalidStep, "sample times must be ascending and non-negative");
        }
        const double span = target - now;
        const auto n = span > 0.0 ? static_cast<std::size_t>(std::ceil(span / dt - 1e-9)) : 0;
        if (n) {
            const Mat hl = (span / static_cast<double>(n)) * l;
            const Mat hl2 = hl * hl;
            const Mat increment = hl + hl2 / 2.0 + hl2 * hl / 6.0 + hl2 * hl2 / 24.0;
            // Kahan-compensated y += increment·y; keeps rounding drift of
            // conserved traces at O(eps) over ~1e8 steps.
            Vec carry = Vec::Zero();
            Vec d;
            for (std::size_t i = 0; i < n; ++i) {
                d.noalias() = increment * y;
                d -= carry;
                const Vec sum = y + d;
                carry = (sum - y) - d;
                y = sum;
            }
        }
        now = target;
        out.push_back(y);
    }
    return out;
}

/// Column-stacked superoperator of ρ ↦ AρB.
template <int N>
Eigen::Matrix<cplx, N * N, N * N> sandwich(const Matrix<N>& a, const Matrix<N>& b) {
    Eigen::Matrix<cplx, N * N, N * N> s;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) s.template block<N, N>(i * N, j * N) = b(j, i) * a;
    return s;
}

}  // namespace ptqs::detail
