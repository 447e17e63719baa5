#include "ptqs/dilation.hpp"

#include "ptqs/errors.hpp"
#include "ptqs/pt_dynamics.hpp"
#include "rk4.hpp"

#include <cmath>

namespace ptqs::dilation {

namespace {

PureState4 stack(const Vector2& psi, const Matrix2& eta) {
    Vector4 v;
    v.head<2>() = psi;
    v.tail<2>() = eta * psi;
    const double n = v.norm();
    return {v / n, 1.0 / n};
}

}  // namespace

MetricOperator metric_operator(const PtParams& p) {
    if (p.ratio() >= 1.0 - 1e-12) {
        throw Error(ErrorCode::MetricSingular, "metric operator is singular at the exceptional point");
    }
    const double w = p.omega();
    const double g = p.gamma();
    const double k = p.kappa();
    const Matrix2 id = Matrix2::Identity();
    return {(w * id + g * linalg::pauli_y()) / k, (w * id - g * linalg::pauli_y()) / k,
            1.0 / std::sqrt(2.0 * k / w)};
}

cplx pt_inner(const Vector2& u, const Vector2& v) {
    return (linalg::pauli_x() * u.conjugate()).transpose() * v;
}

PureState4 dilate_initial(const Vector2& psi0, const PtParams& p) {
    return stack(psi0, metric_operator(p).eta);
}

Matrix4 block_propagator(const PtParams& p, double t) {
    const MetricOperator m = metric_operator(p);
    const Matrix2 u = pt::propagator(p, t);
    Matrix4 out = Matrix4::Zero();
    out.topLeftCorner<2, 2>() = u;
    out.bottomRightCorner<2, 2>() = m.eta * u * m.eta_inverse;
    return out;
}

double dilated_norm_factor(const Vector2& psi0, const PtParams& p) {
    // (𝕀 + η²) = (2ω/κ) η and U_PT conserves ⟨·|η|·⟩.
    const MetricOperator m = metric_operator(p);
    const double eta_norm = (psi0.adjoint() * m.eta * psi0)(0).real();
    return 1.0 / std::sqrt(2.0 * p.omega() / p.kappa() * eta_norm);
}

Matrix4 hamiltonian_4d(const PtParams& p) {
    const MetricOperator m = metric_operator(p);
    const Matrix2 h = pt::hamiltonian(p);
    const Matrix2 x = h * m.eta_inverse + m.eta * h;
    const Matrix2 y = h - h.adjoint();
    const double s = p.kappa() / (2.0 * p.omega());
    Matrix4 out;
    out.topLeftCorner<2, 2>() = s * x;
    out.bottomRightCorner<2, 2>() = s * x;
    out.topRightCorner<2, 2>() = s * y;
    out.bottomLeftCorner<2, 2>() = -s * y;
    return 0.5 * (out + out.adjoint()).eval();
}

Matrix4 propagator_4d(const PtParams& p, double t) {
    return linalg::expm<4>(hamiltonian_4d(p), cplx{0.0, -t});
}

PureState4 evolve_enlarged_state(const Vector2& psi0, const PtParams& p, double t) {
    const MetricOperator m = metric_operator(p);
    return stack(pt::evolve_state(psi0, p, t).amplitudes, m.eta);
}

DensityMatrix4 evolve_enlarged(const Vector2& psi0, const PtParams& p, double t) {
    return DensityMatrix4::pure(evolve_enlarged_state(psi0, p, t).amplitudes);
}

PostSelectionOutcome postselect(const DensityMatrix4& rho4) {
    const Matrix4& r = rho4.matrix();
    PostSelectionOutcome out;
    for (int i = 0; i < 4; ++i) out.populations[i] = std::max(0.0, r(i, i).real());
    out.p_suc = out.populations[0] + out.populations[1];
    out.p_fail = out.populations[2] + out.populations[3];
    if (out.p_suc < 1e-14) {
        throw Error(ErrorCode::EmptyBranch, "success branch has zero probability");
    }
    out.reliable = out.p_suc >= 1e-12;
    out.rho_pt = DensityMatrix2(Matrix2(r.topLeftCorner<2, 2>() / out.p_suc));
    if (out.p_fail >= 1e-14) {
        out.rho_a = DensityMatrix2(Matrix2(r.bottomRightCorner<2, 2>() / out.p_fail));
    }
    return out;
}

std::vector<DensityMatrix4> integrate_enlarged_series(const DensityMatrix4& rho0,
                                                      const PtParams& p,
                                                      std::span<const double> times,
                                                      double dt) {
    const Matrix4 h = hamiltonian_4d(p);
    const Matrix4 id = Matrix4::Identity();
    // ρ ↦ −i(Hρ − ρH) as a 16×16 superoperator.
    const Eigen::Matrix<cplx, 16, 16> l =
        -I_unit * (detail::sandwich<4>(h, id) - detail::sandwich<4>(id, h));
    const Vector<16> y0 = Eigen::Map<const Vector<16>>(rho0.matrix().data());
    const auto raw = detail::rk4_linear_series<16>(y0, times, dt, l);
    std::vector<DensityMatrix4> out;
    out.reserve(raw.size());
    for (const auto& m : raw) out.push_back(DensityMatrix4::projected(Eigen::Map<const Matrix4>(m.data())));
    return out;
}

namespace closed_form {

Matrix4 enlarged_density_plus_y(const PtParams& p, double t) {
    const double w = p.omega();
    const double g = p.gamma();
    const double k = p.kappa();
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    const double d = 4.0 * w;
    Matrix4 m;
    m(0, 0) = (w - g * c + k * s) / d;
    m(1, 1) = (w - g * c - k * s) / d;
    m(2, 2) = (w + g * c + k * s) / d;
    m(3, 3) = (w + g * c - k * s) / d;
    m(0, 1) = I_unit * (g - w * c) / d;
    m(0, 2) = (k + w * s) / d;
    m(0, 3) = -I_unit * (k * c + g * s) / d;
    m(1, 2) = I_unit * (k * c - g * s) / d;
    m(1, 3) = (k - w * s) / d;
    m(2, 3) = -I_unit * (g + w * c) / d;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    }
    return m;
}

Matrix2 auxiliary_density_plus_y(const PtParams& p, double t) {
    const double w = p.omega();
    const double g = p.gamma();
    const double k = p.kappa();
    const double ca = 1.0 / (w + g * std::cos(k * t));
    const double a11 = 0.5 * (1.0 + ca * k * std::sin(k * t));
    const cplx a12 = -I_unit * 0.5 * ca * (g + w * std::cos(k * t));
    Matrix2 m;
    m << a11, a12, std::conj(a12), 1.0 - a11;
    return m;
}

}  // namespace closed_form

}  // namespace ptqs::dilation
