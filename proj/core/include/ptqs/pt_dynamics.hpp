// pt_dynamics.hpp - the bare PT-symmetric two-level system.
//
// H_PT = (ω/2)σ_x + i(γ/2)σ_z evolved with the norm-preserving non-unitary
// map ρ → UρU†/Tr(UρU†). Two independent routes are provided: the propagator
// route (exp(-iH t)) and direct closed-form evaluators. They are kept apart so
// that each checks the other.
#pragma once

#include "ptqs/params.hpp"
#include "ptqs/state.hpp"

#include <span>
#include <vector>

namespace ptqs::pt {

/// (Ω/2)σ_x + i(γ/2)σ_z with Ω = ω, or ω + δ when `perturbed` is set.
Matrix2 hamiltonian(const PtParams& p, bool perturbed = false);

/// U_PT = exp(-i H_PT t). Not unitary for γ > 0.
Matrix2 propagator(const PtParams& p, double t);

/// c_n·U_PT|ψ0⟩ with c_n recorded.
PureState2 evolve_state(const Vector2& psi0, const PtParams& p, double t);

/// U ρ0 U† / Tr(U ρ0 U†).
DensityMatrix2 evolve_density(const DensityMatrix2& rho0, const PtParams& p, double t);

/// Right-hand side of the norm-preserving equation
/// ρ̇ = -i[H₊, ρ] - {Γ, ρ} + 2 Tr(ρΓ) ρ,  H₊ = (ω/2)σ_x,  Γ = -(γ/2)σ_z.
Matrix2 nh_master_rhs(const Matrix2& rho, const PtParams& p);

/// Fixed-step RK4 integration of nh_master_rhs up to time t. The step is
/// shrunk to t/ceil(t/dt) and the trace is reset to 1 after each step.
DensityMatrix2 integrate_nh_master(const DensityMatrix2& rho0, const PtParams& p, double t,
                                   double dt);

/// One RK4 trajectory sampled at each of the ascending `times`.
std::vector<DensityMatrix2> integrate_nh_master_series(const DensityMatrix2& rho0,
                                                       const PtParams& p,
                                                       std::span<const double> times,
                                                       double dt);

namespace closed_form {

/// sin(κt/2)/κ with its EP limit t/2.
double half_sinc(double kappa, double t);

/// a_t, b_t and c_n written out for a general initial state.
PureState2 state(const Vector2& psi0, const PtParams& p, double t);

/// ρ_t for ψ0 = |+⟩_y written with c_pt = 1/(ω - γ cos κt). Close to the EP
/// (ω - γ < 1e-3 ω) the algebraically equivalent form in sin(κt/2)/κ is used.
Matrix2 density_plus_y(const PtParams& p, double t);

}  // namespace closed_form

}  // namespace ptqs::pt
