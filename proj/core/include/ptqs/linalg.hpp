// linalg.hpp - fixed-size complex matrix algebra for 2, 3 and 4 level systems.
//
// Matrices are plain Eigen fixed-size types; every routine here is a pure
// function of its arguments.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

namespace ptqs {

using cplx = std::complex<double>;

template <int N>
using Matrix = Eigen::Matrix<cplx, N, N>;
template <int N>
using Vector = Eigen::Matrix<cplx, N, 1>;

using Matrix2 = Matrix<2>;
using Matrix3 = Matrix<3>;
using Matrix4 = Matrix<4>;
using Vector2 = Vector<2>;
using Vector3 = Vector<3>;
using Vector4 = Vector<4>;

inline constexpr cplx I_unit{0.0, 1.0};

}  // namespace ptqs

namespace ptqs::linalg {

// Below this value of κ (in units of the coupling) closed-form propagators
// switch to their series limits; every sin(κt/2)/κ style ratio is 0/0 at the EP.
inline constexpr double kappa_eps = 1e-8;

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

template <int N>
bool all_finite(const Matrix<N>& m) {
    return m.allFinite();
}

template <int N>
double max_abs(const Matrix<N>& m) {
    return m.cwiseAbs().maxCoeff();
}

template <int N>
double hermiticity_error(const Matrix<N>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// exp(scale * m) by Padé scaling and squaring. Throws InvalidMatrix on
/// non-finite input.
template <int N>
Matrix<N> expm(const Matrix<N>& m, cplx scale = 1.0);

/// exp(-i h t) for a 2x2 h with h² = c·I, using
/// cos(qt)·I - i·sin(qt)/q·h with q = √c.
///
/// Falls back to the Taylor series of cos and sin(qt)/q when 2|q| is below
/// kappa_eps relative to the size of h, which covers the exceptional point
/// where h is nilpotent. Throws NotSu2Like when h² is not a multiple of I.
Matrix2 expm_su2_analytic(const Matrix2& h, double t);

/// Same propagator with the half-splitting q = κ/2 supplied by the caller.
/// Valid for any dimension as long as h² = q²·I holds.
template <int N>
Matrix<N> su2_propagator(const Matrix<N>& h, double t, cplx q);

template <int N>
struct EigenDecomposition {
    std::array<cplx, N> values{};
    std::array<Vector<N>, N> vectors{};
};

/// Eigen-decomposition of a general complex matrix.
///
/// Eigenvalues are sorted by descending real part, then descending imaginary
/// part. Each eigenvector has unit 2-norm and its first non-negligible
/// component is made real and positive. Throws EigFailure when the solver
/// does not converge or a residual exceeds 1e-10·‖m‖.
template <int N>
EigenDecomposition<N> eig(const Matrix<N>& m);

/// Number of singular values above tol·σ_max.
template <int N>
int numerical_rank(const Matrix<N>& m, double tol = 1e-9);

/// Determines whether an eigenvalue of m with algebraic multiplicity `mult`
/// lacks a full eigenspace, i.e. rank(m - λ) > N - mult.
template <int N>
bool is_defective_at(const Matrix<N>& m, cplx lambda, int mult, double tol = 1e-9);

}  // namespace ptqs::linalg
