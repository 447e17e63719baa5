// dilation.hpp - Naimark dilation of the PT dimer into a 4-level Hermitian system.
//
// Basis order is {|1⟩,|2⟩} for the PT subsystem followed by {|3⟩,|4⟩} for the
// auxiliary subsystem, so a dilated vector reads (ψ, χ) with χ = ηψ.
#pragma once

#include "ptqs/params.hpp"
#include "ptqs/postselection.hpp"
#include "ptqs/state.hpp"

#include <span>
#include <vector>

namespace ptqs::dilation {

struct MetricOperator {
    Matrix2 eta;
    Matrix2 eta_inverse;
    /// Normalization of the PT-orthonormal eigenvectors, f = 1/√(2κ/ω).
    double f = 1.0;
};

/// η = (ω𝕀 + γσ_y)/κ. Throws MetricSingular for γ/ω ≥ 1 - 1e-12.
MetricOperator metric_operator(const PtParams& p);

/// PT inner product (σ_x ū)ᵀ v.
cplx pt_inner(const Vector2& u, const Vector2& v);

/// (ψ0, ηψ0)/norm with C_n the normalizing factor.
PureState4 dilate_initial(const Vector2& psi0, const PtParams& p);

/// U_H = diag(U_PT, η U_PT η⁻¹).
Matrix4 block_propagator(const PtParams& p, double t);

/// C̃_n = C_n c_n, constant in time for a given probe.
double dilated_norm_factor(const Vector2& psi0, const PtParams& p);

/// Hermitian generator 𝕀⊗(H η⁻¹ + ηH)·s + iσ_y⊗(H − H†)·s with s = κ/(2ω).
/// Its spectrum is {±κ/2} (each twice) and exp(-i H_4d t) maps every dilated
/// state (x, ηx) onto the dilated state of the evolved x.
Matrix4 hamiltonian_4d(const PtParams& p);

/// U_4d = exp(-i H_4d t); unitary.
Matrix4 propagator_4d(const PtParams& p, double t);

/// |Ψ_t⟩ = C_n (ψ_t, ηψ_t) built from the evolved PT state.
PureState4 evolve_enlarged_state(const Vector2& psi0, const PtParams& p, double t);

/// ρ̃_4d = |Ψ_t⟩⟨Ψ_t|.
DensityMatrix4 evolve_enlarged(const Vector2& psi0, const PtParams& p, double t);

/// Conditions ρ̃_4d on {|1⟩,|2⟩} (success) and {|3⟩,|4⟩} (failure).
/// Throws EmptyBranch when p_suc < 1e-14.
PostSelectionOutcome postselect(const DensityMatrix4& rho4);

/// RK4 integration of ρ̇ = -i[H_4d, ρ], sampled at ascending times.
std::vector<DensityMatrix4> integrate_enlarged_series(const DensityMatrix4& rho0,
                                                      const PtParams& p,
                                                      std::span<const double> times,
                                                      double dt);

namespace closed_form {

/// All sixteen elements of ρ̃_4d for ψ0 = |+⟩_y.
Matrix4 enlarged_density_plus_y(const PtParams& p, double t);

/// ρ_A for ψ0 = |+⟩_y written with c_a = 1/(ω + γ cos κt).
Matrix2 auxiliary_density_plus_y(const PtParams& p, double t);

}  // namespace closed_form

}  // namespace ptqs::dilation
