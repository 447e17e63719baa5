#include "ptqs/pt_dynamics.hpp"

#include "ptqs/errors.hpp"

#include <cmath>

namespace ptqs::pt {

namespace {

void require_normalized(const Vector2& psi0) {
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidParams, "initial state is not normalized");
    }
}

}  // namespace

Matrix2 hamiltonian(const PtParams& p, bool perturbed) {
    const double coupling = perturbed ? p.omega() + p.delta() : p.omega();
    return 0.5 * coupling * linalg::pauli_x() + I_unit * (0.5 * p.gamma()) * linalg::pauli_z();
}

Matrix2 propagator(const PtParams& p, double t) {
    // H_PT² = (κ/2)² I; pass κ/2 directly instead of recovering it from H².
    return linalg::su2_propagator<2>(hamiltonian(p), t, cplx{0.5 * p.kappa(), 0.0});
}

PureState2 evolve_state(const Vector2& psi0, const PtParams& p, double t) {
    require_normalized(psi0);
    const Vector2 v = propagator(p, t) * psi0;
    const double n = v.norm();
    if (!(n > 1e-150)) {
        throw Error(ErrorCode::NormUnderflow, "evolved state has vanishing norm");
    }
    return {v / n, 1.0 / n};
}

DensityMatrix2 evolve_density(const DensityMatrix2& rho0, const PtParams& p, double t) {
    const Matrix2 u = propagator(p, t);
    const Matrix2 m = u * rho0.matrix() * u.adjoint();
    const double tr = m.trace().real();
    if (!(tr > 1e-300)) {
        throw Error(ErrorCode::NormUnderflow, "Tr(U rho U^dagger) underflowed");
    }
    return DensityMatrix2(m / tr);
}

Matrix2 nh_master_rhs(const Matrix2& rho, const PtParams& p) {
    const Matrix2 h_plus = 0.5 * p.omega() * linalg::pauli_x();
    const Matrix2 gamma_op = -0.5 * p.gamma() * linalg::pauli_z();
    const cplx tr = (rho * gamma_op).trace();
    return -I_unit * (h_plus * rho - rho * h_plus) - (gamma_op * rho + rho * gamma_op) +
           2.0 * tr * rho;
}

std::vector<DensityMatrix2> integrate_nh_master_series(const DensityMatrix2& rho0,
                                                       const PtParams& p,
                                                       std::span<const double> times,
                                                       double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::InvalidStep, "dt must be positive and finite");
    }
    // Hermitian ρ = [[a, z], [z*, b]]. Near the EP the flow contracts by ~1/(ω-γ)
    // between refocusings, so stages run in long double with a compensated sum.
    using LD = long double;
    struct State {
        LD a, b, zr, zi;
    };
    const LD w = p.omega();
    const LD g = p.gamma();
    const auto rhs = [w, g](const State& s) {
        const LD tr2 = g * (s.b - s.a);  // 2 Tr(ρΓ), Γ = -(γ/2)σz
        return State{-w * s.zi + g * s.a + tr2 * s.a, w * s.zi - g * s.b + tr2 * s.b,
                     tr2 * s.zr, -0.5L * w * (s.b - s.a) + tr2 * s.zi};
    };
    const auto axpy = [](const State& y, LD h, const State& k) {
        return State{y.a + h * k.a, y.b + h * k.b, y.zr + h * k.zr, y.zi + h * k.zi};
    };
    const Matrix2& m0 = rho0.matrix();
    State y{m0(0, 0).real(), m0(1, 1).real(), m0(0, 1).real(), m0(0, 1).imag()};
    State carry{0, 0, 0, 0};
    const auto kahan = [](LD& v, LD d, LD& c) {
        d -= c;
        const LD sum = v + d;
        c = (sum - v) - d;
        v = sum;
    };

    std::vector<DensityMatrix2> out;
    out.reserve(times.size());
    double now = 0.0;
    for (double target : times) {
        if (!(target >= now)) {
            throw Error(ErrorCode::InvalidStep, "sample times must be ascending and non-negative");
        }
        const double span = target - now;
        const auto n = span > 0.0 ? static_cast<std::size_t>(std::ceil(span / dt - 1e-9)) : 0;
        const LD h = n ? static_cast<LD>(span) / static_cast<LD>(n) : 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const State k1 = rhs(y);
            const State k2 = rhs(axpy(y, 0.5L * h, k1));
            const State k3 = rhs(axpy(y, 0.5L * h, k2));
            const State k4 = rhs(axpy(y, h, k3));
            const LD c = h / 6.0L;
            kahan(y.a, c * (k1.a + 2.0L * (k2.a + k3.a) + k4.a), carry.a);
            kahan(y.b, c * (k1.b + 2.0L * (k2.b + k3.b) + k4.b), carry.b);
            kahan(y.zr, c * (k1.zr + 2.0L * (k2.zr + k3.zr) + k4.zr), carry.zr);
            kahan(y.zi, c * (k1.zi + 2.0L * (k2.zi + k3.zi) + k4.zi), carry.zi);
            const LD f = 1.0L / (y.a + y.b);
            y = {y.a * f, y.b * f, y.zr * f, y.zi * f};
            carry = {carry.a * f, carry.b * f, carry.zr * f, carry.zi * f};
        }
        if (!std::isfinite(static_cast<double>(y.a + y.b + y.zr + y.zi))) {
            throw Error(ErrorCode::InvalidMatrix, "nonlinear master equation diverged");
        }
        now = target;
        Matrix2 m;
        m << cplx(static_cast<double>(y.a), 0.0),
            cplx(static_cast<double>(y.zr), static_cast<double>(y.zi)),
            cplx(static_cast<double>(y.zr), -static_cast<double>(y.zi)),
            cplx(static_cast<double>(y.b), 0.0);
        out.push_back(DensityMatrix2::projected(m));
    }
    return out;
}

DensityMatrix2 integrate_nh_master(const DensityMatrix2& rho0, const PtParams& p, double t,
                                   double dt) {
    const double times[] = {t};
    return integrate_nh_master_series(rho0, p, times, dt).front();
}

namespace closed_form {

double half_sinc(double kappa, double t) {
    const double x = 0.5 * kappa * t;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 0.5 * t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    }
    return std::sin(x) / kappa;
}

PureState2 state(const Vector2& psi0, const PtParams& p, double t) {
    require_normalized(psi0);
    const double w = p.omega();
    const double g = p.gamma();
    const double c = std::cos(0.5 * p.kappa() * t);
    const double s = half_sinc(p.kappa(), t);  // sin(κt/2)/κ
    const cplx a0 = psi0(0);
    const cplx b0 = psi0(1);
    // Un-normalized components, then 1/c_n² as the sum of the two products.
    const cplx a = a0 * c + (a0 * g - I_unit * b0 * w) * s;
    const cplx b = b0 * c - (b0 * g + I_unit * a0 * w) * s;
    const cplx b_conj = std::conj(b0) * c + (I_unit * std::conj(a0) * w - std::conj(b0) * g) * s;
    const cplx a_conj = std::conj(a0) * c + (std::conj(a0) * g + I_unit * std::conj(b0) * w) * s;
    const double inv_cn2 = (b * b_conj + a * a_conj).real();
    const double cn = 1.0 / std::sqrt(inv_cn2);
    return {Vector2(cn * a, cn * b), cn};
}

Matrix2 density_plus_y(const PtParams& p, double t) {
    const double w = p.omega();
    const double g = p.gamma();
    const double k = p.kappa();
    double rho11;
    cplx rho12;
    if (w - g >= 1e-3 * w) {
        const double cpt = 1.0 / (w - g * std::cos(k * t));
        rho11 = 0.5 * (1.0 + cpt * k * std::sin(k * t));
        rho12 = I_unit * 0.5 * cpt * (g - w * std::cos(k * t));
    } else {
        // Same expressions after dividing numerator and denominator by (ω − γ).
        const double s = half_sinc(k, t);
        const double c = std::cos(0.5 * k * t);
        const double denom = 1.0 + 2.0 * g * (w + g) * s * s;
        rho11 = 0.5 * (1.0 + 2.0 * (w + g) * s * c / denom);
        rho12 = I_unit * 0.5 * (-1.0 + 2.0 * w * (w + g) * s * s) / denom;
    }
    Matrix2 m;
    m << rho11, rho12, std::conj(rho12), 1.0 - rho11;
    return m;
}

}  // namespace closed_form

}  // namespace ptqs::pt
