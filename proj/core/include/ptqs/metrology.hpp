// metrology.hpp - estimation of ω: susceptibility, SLD, QFI and resource costs.
//
// All ω-derivatives are taken at fixed physical time t by central finite
// differences. For the dilated scheme the probe |Ψ₀⟩ = C_n(ψ₀, η(ω)ψ₀) is
// prepared once at the nominal ω; only the channel exp(−iH_4d(ω′)t) follows ω′.
#pragma once

#include "ptqs/params.hpp"
#include "ptqs/state.hpp"

#include <Eigen/Dense>

#include <functional>

namespace ptqs::metrology {

using DynMatrix = Eigen::MatrixXcd;

enum class Scheme { Pt, Enlarged, Eff };

struct FdConfig {
    /// Absolute step in ω (rad/s). Must satisfy 0 < h ≤ 1e-3·ω.
    double h = 1e-6;
    bool richardson = true;

    /// h = h_rel·ω.
    static FdConfig relative(const PtParams& p, double h_rel = 1e-6, bool richardson = true);
};

/// ω′ ↦ some matrix-valued observable of the evolved state (fixed t).
using StateMap = std::function<DynMatrix(double omega)>;

/// Step actually used at p: min(fd.h, 0.01(ω−γ)) so that ω − h stays in the
/// unbroken phase. Throws InvalidStep for a bad fd.h and StepCrossesEp when
/// no admissible step exists.
double effective_step(const PtParams& p, const FdConfig& fd);

/// Central difference of `f` at p.omega(), Richardson-extrapolated when set.
DynMatrix central_derivative(const StateMap& f, const PtParams& p, const FdConfig& fd);

/// Output of the dilated channel at ω′ for a probe dilated at the nominal ω.
Vector4 enlarged_channel_state(const Vector2& psi0, const PtParams& p, double omega_prime,
                               double t);

/// Bare ρ_t (Pt), channel ρ̃_4d (Enlarged) or unnormalized ϱ_eff (Eff).
StateMap state_map(Scheme scheme, const Vector2& psi0, const PtParams& p, double t);

/// P₁(ω+δ, t) − P₁(ω, t); P₁ is ρ_t¹¹, ρ̃_4d¹¹ or the renormalized ρ_eff¹¹.
/// Throws InvalidParams for |δ| > 0.1ω and InvalidScheme when the enlarged
/// scheme is asked for at the EP.
double population_shift(Scheme scheme, const PtParams& p, double delta, double t,
                        const Vector2& psi0 = probe::plus_y());

/// ∂_ω of the diagonal element `index` of the mapped state.
double susceptibility(const StateMap& state_fn, const PtParams& p, int index,
                      const FdConfig& fd);

/// Solves ∂ρ = ½(Lρ + ρL) in the eigenbasis of ρ. Pairs with ε_m + ε_n < 1e-12
/// are left at zero. Throws InvalidDerivative for a non-Hermitian drho.
DynMatrix sld(const DynMatrix& rho, const DynMatrix& drho);

/// Tr(ρL²).
double qfi_sld(const DynMatrix& rho, const DynMatrix& drho);

/// Eigen-decomposition form: Σ(∂ε_n)²/ε_n + 4Σε_n⟨∂n|∂n⟩ − 8Σε_nε_m/(ε_n+ε_m)|⟨∂n|m⟩|².
double qfi_spectral(const DynMatrix& rho, const DynMatrix& drho);

/// Tr(∂ρ²) + Tr((ρ∂ρ)²)/det ρ, or 2Tr(∂ρ²) when det ρ < 1e-10.
double qfi_two_level(const Matrix2& rho, const Matrix2& drho);

/// 4(⟨∂ψ|∂ψ⟩ − |⟨ψ|∂ψ⟩|²). Throws InvalidParams for ‖ψ‖ ≠ 1.
double qfi_pure(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& dpsi);

/// 1/√(N·I), +∞ for I = 0.
double cramer_rao(double qfi, int n);

struct QfiReport {
    // Single-state QFIs.
    double F_pt = 0.0;
    double F_a = 0.0;
    double F_4d = 0.0;
    double F_eff = 0.0;
    // Weighted QFIs.
    double I_suc = 0.0;
    double I_fail = 0.0;
    double I_subs = 0.0;
    double I_4d = 0.0;
    double I_eff = 0.0;
    double p_suc = 0.0;
    double p_fail = 0.0;
    // Sensitivity bounds; +∞ where the matching QFI vanishes.
    double delta_omega_subs = 0.0;
    double delta_omega_4d = 0.0;
    double delta_omega_eff = 0.0;
    int N = 1;
    /// SLD of the conditioned state (ρ_PT or ρ_eff).
    DynMatrix L_sld;
    bool reliable = true;
};

struct ResourceReport {
    double xi = 0.0;
    double zeta = 0.0;
};

/// QFI of the bare normalized ρ_t(ω).
double qfi_pt(const PtParams& p, double t, const FdConfig& fd,
              const Vector2& psi0 = probe::plus_y());

/// Scheme I: F_PT, F_A from the post-selected blocks, F_4d from the pure
/// channel output, then I_suc = F_PT p_suc, I_fail = F_A p_fail, I_subs and I_4d.
QfiReport weighted_qfi_scheme1(const PtParams& p, double t, const FdConfig& fd,
                               const Vector2& psi0 = probe::plus_y(), int n = 1);

/// Scheme II: F_eff on the renormalized ρ_eff and I_eff = F_eff p_suc^eff.
QfiReport weighted_qfi_scheme2(const PtParams& p, double t, const FdConfig& fd,
                               const Vector2& psi0 = probe::plus_y(), int n = 1);

/// ξ = (I_4d − I_subs)/I_4d, ζ = √(I_subs/I_4d).
/// Throws UndefinedResourceMetrics when I_4d ≤ 1e-12.
ResourceReport resource_metrics(const QfiReport& scheme1);
ResourceReport resource_metrics(const PtParams& p, double t, const FdConfig& fd,
                                const Vector2& psi0 = probe::plus_y());

}  // namespace ptqs::metrology
