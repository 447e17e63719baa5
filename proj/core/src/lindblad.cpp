#include "ptqs/lindblad.hpp"

#include "ptqs/errors.hpp"
#include "ptqs/pt_dynamics.hpp"
#include "rk4.hpp"

#include <cmath>

namespace ptqs::lindblad {

UnnormalizedMatrix2::UnnormalizedMatrix2(const Matrix2& m, double log_scale)
    : log_scale_(log_scale) {
    if (!m.allFinite() || !std::isfinite(log_scale)) {
        throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
    }
    const double scale = std::max(1.0, linalg::max_abs(m));
    if (linalg::hermiticity_error(m) > 1e-12 * scale) {
        throw Error(ErrorCode::InvalidMatrix, "matrix is not Hermitian");
    }
    m_ = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix2> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10 * scale) {
        throw Error(ErrorCode::InvalidMatrix, "matrix is not positive semidefinite");
    }
}

DensityMatrix2 UnnormalizedMatrix2::normalized() const {
    const double tr = m_.trace().real();
    if (!(tr > 0.0)) {
        throw Error(ErrorCode::NormUnderflow, "cannot renormalize a zero-trace matrix");
    }
    return DensityMatrix2(Matrix2(m_ / tr));
}

namespace {

LindbladModel operators_only(const PtParams& p) {
    LindbladModel m;
    m.h0 = Matrix3::Zero();
    m.h0(0, 1) = m.h0(1, 0) = 0.5 * p.omega();
    m.jump = Matrix3::Zero();
    // rate 2γ on ϱ22, consistent with H_eff = H0 - iγ|2><2|
    m.jump(2, 1) = std::sqrt(2.0 * p.gamma());
    m.liouvillian = Matrix4::Zero();
    return m;
}

}  // namespace

LindbladModel model(const PtParams& p) {
    LindbladModel m = operators_only(p);
    m.liouvillian = liouvillian_matrix(p).matrix;
    return m;
}

Matrix3 lindblad_rhs(const Matrix3& rho, const LindbladModel& m) {
    const Matrix3 jdj = m.jump.adjoint() * m.jump;
    return -I_unit * (m.h0 * rho - rho * m.h0) + m.jump * rho * m.jump.adjoint() -
           0.5 * (jdj * rho + rho * jdj);
}

std::vector<DensityMatrix3> integrate_lindblad_series(const DensityMatrix3& rho0,
                                                      const PtParams& p,
                                                      std::span<const double> times,
                                                      double dt) {
    const LindbladModel m = operators_only(p);
    const Matrix3 id = Matrix3::Identity();
    const Matrix3 jdj = m.jump.adjoint() * m.jump;
    // Superoperator of lindblad_rhs.
    const Eigen::Matrix<cplx, 9, 9> l =
        -I_unit * (detail::sandwich<3>(m.h0, id) - detail::sandwich<3>(id, m.h0)) +
        detail::sandwich<3>(m.jump, m.jump.adjoint()) -
        0.5 * (detail::sandwich<3>(jdj, id) + detail::sandwich<3>(id, jdj));
    const Vector<9> y0 = Eigen::Map<const Vector<9>>(rho0.matrix().data());
    const auto raw = detail::rk4_linear_series<9>(y0, times, dt, l);
    std::vector<DensityMatrix3> out;
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back(DensityMatrix3::projected(Eigen::Map<const Matrix3>(r.data())));
    return out;
}

DensityMatrix3 integrate_lindblad(const DensityMatrix3& rho0, const PtParams& p, double t,
                                  double dt) {
    const double times[] = {t};
    return integrate_lindblad_series(rho0, p, times, dt).front();
}

Vector3 plus_y_3l() {
    const double r = 1.0 / std::sqrt(2.0);
    return Vector3(r, I_unit * r, 0.0);
}

DensityMatrix3 analytic_rho_3l(const PtParams& p, double t) {
    const double w = p.omega();
    const double g = p.gamma();
    const double k = p.kappa();
    const double decay = std::exp(-g * t);
    double r11;
    double r22;
    cplx r12;
    if (w - g >= 1e-3 * w) {
        const double c3l = decay / (2.0 * (w - g));
        const double c = std::cos(k * t);
        const double s = std::sin(k * t);
        r11 = c3l * (w - g * c + k * s);
        r22 = c3l * (w - g * c - k * s);
        r12 = I_unit * c3l * (g - w * c);
    } else {
        // ω − γcos κt = (ω − γ)(1 + 2γ(ω+γ)s²) and κ sin κt = 2(ω−γ)(ω+γ)sc.
        const double s = pt::closed_form::half_sinc(k, t);
        const double c = std::cos(0.5 * k * t);
        const double base = 1.0 + 2.0 * g * (w + g) * s * s;
        const double split = 2.0 * (w + g) * s * c;
        r11 = 0.5 * decay * (base + split);
        r22 = 0.5 * decay * (base - split);
        r12 = I_unit * 0.5 * decay * (-1.0 + 2.0 * w * (w + g) * s * s);
    }
    Matrix3 m = Matrix3::Zero();
    m(0, 0) = r11;
    m(1, 1) = r22;
    m(2, 2) = 1.0 - r11 - r22;
    m(0, 1) = r12;
    m(1, 0) = std::conj(r12);
    return DensityMatrix3(m);
}

Matrix2 effective_hamiltonian(const PtParams& p) {
    Matrix2 h;
    h << 0.0, 0.5 * p.omega(), 0.5 * p.omega(), -I_unit * p.gamma();
    return h;
}

Matrix2 effective_propagator(const PtParams& p, double t) {
    return linalg::expm<2>(effective_hamiltonian(p), cplx{0.0, -t});
}

UnnormalizedMatrix2 effective_evolve(const DensityMatrix2& rho0, const PtParams& p, double t) {
    const Matrix2 h = effective_hamiltonian(p);
    const cplx shift = 0.5 * h.trace();
    // The traceless rest squares to (κ/2)²𝕀. κ is taken from PtParams, whose
    // factored form keeps its digits near the EP; recovering it from the
    // matrix square (or using Padé) costs ~1e-8 there at late times.
    const Matrix2 u =
        linalg::su2_propagator<2>(Matrix2(h - shift * Matrix2::Identity()), t, 0.5 * p.kappa());
    // |exp(−i·shift·t)|² = exp(2 Im(shift) t).
    return UnnormalizedMatrix2(Matrix2(u * rho0.matrix() * u.adjoint()), 2.0 * shift.imag() * t);
}

Matrix2 effective_rhs(const Matrix2& rho, const PtParams& p) {
    const Matrix2 h = effective_hamiltonian(p);
    return -I_unit * (h * rho - rho * h.adjoint());
}

UnnormalizedMatrix2 artificial_pt(const PtParams& p, double t, const UnnormalizedMatrix2& rho_eff) {
    const double exponent = p.gamma() * t;
    if (exponent > 700.0) {
        throw Error(ErrorCode::GainOverflow, "gain factor exp(gamma t) overflows");
    }
    return UnnormalizedMatrix2(rho_eff.scaled(), rho_eff.log_scale() + exponent);
}

PostSelectionOutcome postselect_3l(const DensityMatrix3& rho3) {
    const Matrix3& r = rho3.matrix();
    PostSelectionOutcome out;
    for (int i = 0; i < 3; ++i) out.populations[i] = std::max(0.0, r(i, i).real());
    out.p_suc = out.populations[0] + out.populations[1];
    out.p_fail = out.populations[2];
    if (out.p_suc < 1e-14) {
        throw Error(ErrorCode::EmptyBranch, "no population left outside the sink");
    }
    out.reliable = out.p_suc >= 1e-12;
    out.rho_pt = DensityMatrix2(Matrix2(r.topLeftCorner<2, 2>() / out.p_suc));
    return out;
}

LiouvillianSpectrum liouvillian_matrix(const PtParams& p) {
    const cplx a = I_unit * (0.5 * p.omega());
    const double g = p.gamma();
    LiouvillianSpectrum out;
    out.matrix << 0.0, a, -a, 0.0,
                  a, -g, 0.0, -a,
                  -a, 0.0, -g, a,
                  0.0, -a, a, -2.0 * g;
    out.eigenvalues = linalg::eig<4>(out.matrix).values;
    return out;
}

}  // namespace ptqs::lindblad
