#include "ptqs/metrology.hpp"

#include "ptqs/dilation.hpp"
#include "ptqs/errors.hpp"
#include "ptqs/lindblad.hpp"
#include "ptqs/pt_dynamics.hpp"

#include <cmath>
#include <limits>

namespace ptqs::metrology {

namespace {

constexpr double support_eps = 1e-12;
constexpr double purity_eps = 1e-10;

double clip(double f) { return (f < 0.0 && f >= -1e-9) ? 0.0 : f; }

DynMatrix hermitian_part(const DynMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_hermitian(const DynMatrix& drho) {
    const double scale = std::max(1.0, drho.cwiseAbs().maxCoeff());
    if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw Error(ErrorCode::InvalidDerivative, "derivative of rho is not Hermitian");
    }
}

DynMatrix outer(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

// Post-selected, renormalized block of a pure 4-vector: upper (PT) or lower (A).
DynMatrix conditioned_block(const Vector4& v, bool upper) {
    const Eigen::VectorXcd part = upper ? Eigen::VectorXcd(v.head<2>()) : Eigen::VectorXcd(v.tail<2>());
    return outer(part) / part.squaredNorm();
}

}  // namespace

FdConfig FdConfig::relative(const PtParams& p, double h_rel, bool richardson) {
    return {h_rel * p.omega(), richardson};
}

double effective_step(const PtParams& p, const FdConfig& fd) {
    if (!(fd.h > 0.0) || fd.h > 1e-3 * p.omega() * (1.0 + 1e-12)) {
        throw Error(ErrorCode::InvalidStep, "finite-difference step must lie in (0, 1e-3 omega]");
    }
    const double h = std::min(fd.h, 0.01 * (p.omega() - p.gamma()));
    if (!(h > 0.0) || p.omega() - h <= p.gamma()) {
        throw Error(ErrorCode::StepCrossesEp, "finite-difference stencil crosses the exceptional point");
    }
    return h;
}

DynMatrix central_derivative(const StateMap& f, const PtParams& p, const FdConfig& fd) {
    const double h = effective_step(p, fd);
    const double w = p.omega();
    auto diff = [&](double step) -> DynMatrix { return (f(w + step) - f(w - step)) / (2.0 * step); };
    if (!fd.richardson) return diff(h);
    // h is already small; the extrapolation uses h and h/2.
    return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
}

Vector4 enlarged_channel_state(const Vector2& psi0, const PtParams& p, double omega_prime,
                               double t) {
    const Vector4 probe4 = dilation::dilate_initial(psi0, p).amplitudes;
    return dilation::propagator_4d(p.with_omega(omega_prime), t) * probe4;
}

StateMap state_map(Scheme scheme, const Vector2& psi0, const PtParams& p, double t) {
    switch (scheme) {
        case Scheme::Pt:
            return [psi0, p, t](double w) -> DynMatrix {
                return pt::evolve_density(DensityMatrix2::pure(psi0), p.with_omega(w), t).matrix();
            };
        case Scheme::Enlarged: {
            const Vector4 probe4 = dilation::dilate_initial(psi0, p).amplitudes;
            return [probe4, p, t](double w) -> DynMatrix {
                const Vector4 v = dilation::propagator_4d(p.with_omega(w), t) * probe4;
                return outer(v);
            };
        }
        case Scheme::Eff:
            return [psi0, p, t](double w) -> DynMatrix {
                return lindblad::effective_evolve(DensityMatrix2::pure(psi0), p.with_omega(w), t)
                    .matrix();
            };
    }
    throw Error(ErrorCode::InvalidScheme, "unknown scheme");
}

double population_shift(Scheme scheme, const PtParams& p, double delta, double t,
                        const Vector2& psi0) {
    if (!(std::abs(delta) <= 0.1 * p.omega())) {
        throw Error(ErrorCode::InvalidParams, "|delta| must not exceed 0.1 omega");
    }
    if (scheme == Scheme::Enlarged && p.ratio() >= 1.0 - 1e-12) {
        throw Error(ErrorCode::InvalidScheme, "the dilation needs gamma/omega < 1");
    }
    const StateMap f = state_map(scheme, psi0, p, t);
    auto p1 = [&](double w) {
        // ρ_eff is compared after renormalization.
        if (scheme == Scheme::Eff) {
            return lindblad::effective_evolve(DensityMatrix2::pure(psi0), p.with_omega(w), t)
                .normalized()(0, 0)
                .real();
        }
        return f(w)(0, 0).real();
    };
    if (delta == 0.0) return 0.0;
    return p1(p.omega() + delta) - p1(p.omega());
}

double susceptibility(const StateMap& state_fn, const PtParams& p, int index, const FdConfig& fd) {
    const DynMatrix d = central_derivative(state_fn, p, fd);
    if (index < 0 || index >= d.rows()) {
        throw Error(ErrorCode::InvalidParams, "population index out of range");
    }
    return d(index, index).real();
}

DynMatrix sld(const DynMatrix& rho, const DynMatrix& drho) {
    require_hermitian(drho);
    Eigen::SelfAdjointEigenSolver<DynMatrix> es(hermitian_part(rho));
    const Eigen::VectorXd eps = es.eigenvalues();
    const DynMatrix& v = es.eigenvectors();
    DynMatrix d = v.adjoint() * hermitian_part(drho) * v;
    const auto n = rho.rows();
    DynMatrix l = DynMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double s = eps(m) + eps(k);
            if (s >= support_eps) l(m, k) = 2.0 * d(m, k) / s;
        }
    }
    return v * l * v.adjoint();
}

double qfi_sld(const DynMatrix& rho, const DynMatrix& drho) {
    const DynMatrix l = sld(rho, drho);
    return clip((rho * l * l).trace().real());
}

double qfi_spectral(const DynMatrix& rho, const DynMatrix& drho) {
    require_hermitian(drho);
    Eigen::SelfAdjointEigenSolver<DynMatrix> es(hermitian_part(rho));
    const Eigen::VectorXd eps = es.eigenvalues();
    const DynMatrix& v = es.eigenvectors();
    const DynMatrix d = v.adjoint() * hermitian_part(drho) * v;
    const auto n = rho.rows();
    // c(m, k) = ⟨m|∂k⟩ from first-order perturbation theory, ⟨k|∂k⟩ = 0.
    DynMatrix c = DynMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double gap = eps(k) - eps(m);
            if (m != k && std::abs(gap) > support_eps) c(m, k) = d(m, k) / gap;
        }
    }
    double f = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (eps(k) > support_eps) f += d(k, k).real() * d(k, k).real() / eps(k);
        f += 4.0 * std::max(eps(k), 0.0) * c.col(k).squaredNorm();
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index m = 0; m < n; ++m) {
            const double ek = std::max(eps(k), 0.0);
            const double em = std::max(eps(m), 0.0);
            if (ek + em < support_eps) continue;
            f -= 8.0 * ek * em / (ek + em) * std::norm(c(m, k));
        }
    }
    return clip(f);
}

double qfi_two_level(const Matrix2& rho, const Matrix2& drho) {
    const double det = rho.determinant().real();
    const double base = (drho * drho).trace().real();
    if (det < purity_eps) return clip(2.0 * base);
    const Matrix2 rd = rho * drho;
    return clip(base + (rd * rd).trace().real() / det);
}

double qfi_pure(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& dpsi) {
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidParams, "state vector is not normalized");
    }
    const cplx overlap = psi.dot(dpsi);
    return clip(4.0 * (dpsi.squaredNorm() - std::norm(overlap)));
}

double cramer_rao(double qfi, int n) {
    if (!(qfi > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(static_cast<double>(n) * qfi);
}

double qfi_pt(const PtParams& p, double t, const FdConfig& fd, const Vector2& psi0) {
    const StateMap f = state_map(Scheme::Pt, psi0, p, t);
    const Matrix2 drho = hermitian_part(central_derivative(f, p, fd));
    return qfi_two_level(f(p.omega()), drho);
}

QfiReport weighted_qfi_scheme1(const PtParams& p, double t, const FdConfig& fd,
                               const Vector2& psi0, int n) {
    QfiReport r;
    r.N = n;
    effective_step(p, fd);
    const Vector4 probe4 = dilation::dilate_initial(psi0, p).amplitudes;
    auto channel = [&](double w) -> Vector4 {
        return dilation::propagator_4d(p.with_omega(w), t) * probe4;
    };
    const Vector4 psi_t = channel(p.omega());
    r.p_suc = psi_t.head<2>().squaredNorm();
    r.p_fail = psi_t.tail<2>().squaredNorm();

    const DynMatrix dpsi =
        central_derivative([&](double w) -> DynMatrix { return channel(w); }, p, fd);
    r.F_4d = qfi_pure(psi_t, dpsi.col(0));

    const Matrix2 rho_pt = conditioned_block(psi_t, true);
    const Matrix2 drho_pt = hermitian_part(central_derivative(
        [&](double w) { return conditioned_block(channel(w), true); }, p, fd));
    r.F_pt = qfi_two_level(rho_pt, drho_pt);
    r.L_sld = sld(rho_pt, drho_pt);
    if (r.p_fail >= 1e-14) {
        const Matrix2 rho_a = conditioned_block(psi_t, false);
        const Matrix2 drho_a = hermitian_part(central_derivative(
            [&](double w) { return conditioned_block(channel(w), false); }, p, fd));
        r.F_a = qfi_two_level(rho_a, drho_a);
    }
    r.reliable = r.p_suc >= 1e-12;
    r.I_suc = r.F_pt * r.p_suc;
    r.I_fail = r.F_a * r.p_fail;
    r.I_subs = r.I_suc + r.I_fail;
    r.I_4d = r.F_4d;
    r.delta_omega_subs = cramer_rao(r.I_subs, n);
    r.delta_omega_4d = cramer_rao(r.I_4d, n);
    return r;
}

QfiReport weighted_qfi_scheme2(const PtParams& p, double t, const FdConfig& fd,
                               const Vector2& psi0, int n) {
    QfiReport r;
    r.N = n;
    effective_step(p, fd);
    const DensityMatrix2 rho0 = DensityMatrix2::pure(psi0);
    auto renormalized = [&](double w) -> DynMatrix {
        return lindblad::effective_evolve(rho0, p.with_omega(w), t).normalized().matrix();
    };
    const auto eff = lindblad::effective_evolve(rho0, p, t);
    r.p_suc = eff.trace();
    r.p_fail = 1.0 - r.p_suc;
    r.reliable = r.p_suc >= 1e-12;
    const Matrix2 rho = eff.normalized().matrix();
    const Matrix2 drho = hermitian_part(central_derivative(renormalized, p, fd));
    r.F_eff = qfi_two_level(rho, drho);
    r.L_sld = sld(rho, drho);
    r.I_eff = r.F_eff * r.p_suc;
    r.delta_omega_eff = cramer_rao(r.I_eff, n);
    return r;
}

ResourceReport resource_metrics(const QfiReport& scheme1) {
    if (!(scheme1.I_4d > 1e-12)) {
        throw Error(ErrorCode::UndefinedResourceMetrics, "I_4d vanishes; xi and zeta are undefined");
    }
    return {(scheme1.I_4d - scheme1.I_subs) / scheme1.I_4d,
            std::sqrt(scheme1.I_subs / scheme1.I_4d)};
}

ResourceReport resource_metrics(const PtParams& p, double t, const FdConfig& fd,
                                const Vector2& psi0) {
    return resource_metrics(weighted_qfi_scheme1(p, t, fd, psi0));
}

}  // namespace ptqs::metrology
