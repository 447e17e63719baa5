// state.hpp - pure states and density matrices of fixed dimension.
#pragma once

#include "ptqs/linalg.hpp"

namespace ptqs {

/// Normalized state vector together with the factor that normalized it
/// (c_n for the bare system, C_n for the dilated one).
template <int N>
struct PureState {
    Vector<N> amplitudes = Vector<N>::Zero();
    double norm_factor = 1.0;

    double population(int i) const { return std::norm(amplitudes(i)); }
};

using PureState2 = PureState<2>;
using PureState4 = PureState<4>;

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// Construction validates those properties (Hermiticity and trace to 1e-9,
/// eigenvalues ≥ -1e-10) and stores the Hermitian part.
template <int N>
class DensityMatrix {
public:
    DensityMatrix() : m_(Matrix<N>::Zero()) { m_(0, 0) = 1.0; }
    explicit DensityMatrix(const Matrix<N>& m);

    static DensityMatrix pure(const Vector<N>& v);

    /// For integrator output: eigenvalues in [-neg_tol, 0) are set to zero and
    /// the trace restored before the usual validation.
    static DensityMatrix projected(const Matrix<N>& m, double neg_tol = 1e-8);

    const Matrix<N>& matrix() const noexcept { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }
    double population(int i) const { return m_(i, i).real(); }
    double purity() const { return (m_ * m_).trace().real(); }

private:
    Matrix<N> m_;
};

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix3 = DensityMatrix<3>;
using DensityMatrix4 = DensityMatrix<4>;

namespace probe {

/// |+⟩_y = (|1⟩ + i|2⟩)/√2, the optimal probe.
Vector2 plus_y();
/// |−⟩_y = (|1⟩ − i|2⟩)/√2.
Vector2 minus_y();
/// cos(θ/2)|1⟩ + e^{iφ} sin(θ/2)|2⟩.
Vector2 bloch(double theta, double phi);

}  // namespace probe

}  // namespace ptqs
