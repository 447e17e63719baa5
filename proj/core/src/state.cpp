#include "ptqs/state.hpp"

#include "ptqs/errors.hpp"

#include <cmath>

namespace ptqs {

template <int N>
DensityMatrix<N>::DensityMatrix(const Matrix<N>& m) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidMatrix, "density matrix has non-finite entries");
    }
    if (linalg::hermiticity_error(m) > 1e-9) {
        throw Error(ErrorCode::InvalidMatrix, "density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidMatrix, "density matrix trace differs from 1");
    }
    m_ = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix<N>> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw Error(ErrorCode::InvalidMatrix, "density matrix has a negative eigenvalue");
    }
}

template <int N>
DensityMatrix<N> DensityMatrix<N>::pure(const Vector<N>& v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) {
        throw Error(ErrorCode::InvalidMatrix, "cannot build a pure state from a zero vector");
    }
    return DensityMatrix<N>(v * v.adjoint() / n2);
}

template <int N>
DensityMatrix<N> DensityMatrix<N>::projected(const Matrix<N>& m, double neg_tol) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::InvalidMatrix, "density matrix has non-finite entries");
    }
    const Matrix<N> h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix<N>> solver(h);
    const auto& ev = solver.eigenvalues();
    if (ev.minCoeff() >= 0.0 || ev.minCoeff() < -neg_tol) return DensityMatrix<N>(m);
    const Eigen::Matrix<double, N, 1> clipped = ev.cwiseMax(0.0);
    Matrix<N> out = solver.eigenvectors() * clipped.template cast<cplx>().asDiagonal() *
                    solver.eigenvectors().adjoint();
    // Keep the original trace so that trace drift is still detected.
    out *= h.trace().real() / clipped.sum();
    return DensityMatrix<N>(out);
}

template class DensityMatrix<2>;
template class DensityMatrix<3>;
template class DensityMatrix<4>;

namespace probe {

Vector2 plus_y() { return Vector2(1.0, I_unit) / std::sqrt(2.0); }

Vector2 minus_y() { return Vector2(1.0, -I_unit) / std::sqrt(2.0); }

Vector2 bloch(double theta, double phi) {
    return Vector2(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
}

}  // namespace probe

}  // namespace ptqs
