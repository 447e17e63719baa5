#include "ptqs/linalg.hpp"

#include "ptqs/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ptqs::linalg {

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << 0.0, -I_unit, I_unit, 0.0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

template <int N>
Matrix<N> expm(const Matrix<N>& m, cplx scale) {
    if (!m.allFinite() || !std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw Error(ErrorCode::InvalidMatrix, "expm: non-finite input");
    }
    const Matrix<N> a = scale * m;
    Matrix<N> result = a.exp();
    if (!result.allFinite()) {
        throw Error(ErrorCode::InvalidMatrix, "expm: result overflowed");
    }
    return result;
}

template <int N>
Matrix<N> su2_propagator(const Matrix<N>& h, double t, cplx q) {
    const Matrix<N> id = Matrix<N>::Identity();
    const cplx qt = q * t;
    const double ref = 2.0 * max_abs(h);
    cplx cos_qt;
    cplx sinc_t;  // sin(qt)/q
    if (q == cplx{0.0} || (std::abs(2.0 * q) < kappa_eps * ref && std::abs(qt) < 1e-2)) {
        // Series in c = q²; truncation error O((qt)^10).
        const cplx x = qt * qt;
        cos_qt = 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0 + x * x * x * x / 40320.0;
        sinc_t = t * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0 + x * x * x * x / 362880.0);
    } else {
        cos_qt = std::cos(qt);
        sinc_t = std::sin(qt) / q;
    }
    return cos_qt * id - I_unit * sinc_t * h;
}

Matrix2 expm_su2_analytic(const Matrix2& h, double t) {
    if (!h.allFinite() || !std::isfinite(t)) {
        throw Error(ErrorCode::InvalidMatrix, "expm_su2_analytic: non-finite input");
    }
    const Matrix2 h2 = h * h;
    const cplx c = h2.trace() / 2.0;
    const double scale = std::max(max_abs(h) * max_abs(h), 1e-300);
    if ((h2 - c * Matrix2::Identity()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::NotSu2Like, "expm_su2_analytic: h^2 is not proportional to identity");
    }
    return su2_propagator<2>(h, t, std::sqrt(c));
}

namespace {

template <int N>
Vector<N> normalize_phase(Vector<N> v) {
    const double n = v.norm();
    if (n > 0.0) v /= n;
    for (int i = 0; i < N; ++i) {
        const double a = std::abs(v(i));
        if (a > 1e-10) {
            v *= std::conj(v(i)) / a;
            v(i) = cplx{a, 0.0};
            break;
        }
    }
    return v;
}

}  // namespace

template <int N>
EigenDecomposition<N> eig(const Matrix<N>& m) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidMatrix, "eig: non-finite input");
    }
    Eigen::ComplexEigenSolver<Matrix<N>> solver(m, true);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::EigFailure, "eig: complex Schur iteration did not converge");
    }
    std::array<int, N> order{};
    std::iota(order.begin(), order.end(), 0);
    const auto& vals = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        // Real parts closer than the solver accuracy count as equal.
        const double tol = 1e-9 * std::max({1.0, std::abs(vals(a)), std::abs(vals(b))});
        if (std::abs(vals(a).real() - vals(b).real()) > tol) return vals(a).real() > vals(b).real();
        return vals(a).imag() > vals(b).imag();
    });

    EigenDecomposition<N> out;
    const double norm_m = m.norm();
    for (int k = 0; k < N; ++k) {
        const int j = order[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = vals(j);
        out.vectors[static_cast<std::size_t>(k)] = normalize_phase<N>(solver.eigenvectors().col(j));
        const Vector<N>& v = out.vectors[static_cast<std::size_t>(k)];
        const double residual = (m * v - vals(j) * v).norm();
        if (residual > 1e-10 * norm_m + 1e-300) {
            throw Error(ErrorCode::EigFailure, "eig: eigenpair residual too large");
        }
    }
    return out;
}

template <int N>
int numerical_rank(const Matrix<N>& m, double tol) {
    Eigen::JacobiSVD<Matrix<N>> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < N; ++i) {
        if (s(i) > tol * s(0)) ++rank;
    }
    return rank;
}

template <int N>
bool is_defective_at(const Matrix<N>& m, cplx lambda, int mult, double tol) {
    const Matrix<N> shifted = m - lambda * Matrix<N>::Identity();
    // Scale-aware tolerance: compare against ‖m‖ rather than σ_max of the shift.
    Eigen::JacobiSVD<Matrix<N>> svd(shifted);
    const double ref = std::max(m.norm(), 1e-300);
    int rank = 0;
    for (int i = 0; i < N; ++i) {
        if (svd.singularValues()(i) > tol * ref) ++rank;
    }
    return rank > N - mult;
}

#define PTQS_INSTANTIATE(N)                                                        \
    template Matrix<N> expm<N>(const Matrix<N>&, cplx);                            \
    template Matrix<N> su2_propagator<N>(const Matrix<N>&, double, cplx);          \
    template EigenDecomposition<N> eig<N>(const Matrix<N>&);                       \
    template int numerical_rank<N>(const Matrix<N>&, double);                      \
    template bool is_defective_at<N>(const Matrix<N>&, cplx, int, double);

PTQS_INSTANTIATE(2)
PTQS_INSTANTIATE(3)
PTQS_INSTANTIATE(4)

#undef PTQS_INSTANTIATE

}  // namespace ptqs::linalg
