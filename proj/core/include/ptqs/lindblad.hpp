// lindblad.hpp - Scheme II: passive three-level Lindblad dynamics.
//
// Levels |1⟩,|2⟩ are coupled by (ω/2)σ_x and |2⟩ decays into the sink |3⟩
// through J = √γ|3⟩⟨2|. Restricted to {|1⟩,|2⟩} this is the effective
// non-Hermitian H_eff = H_PT − i(γ/2)𝕀.
//
// Liouvillian vectorization is row-stacking: [ϱ₁₁, ϱ₁₂, ϱ₂₁, ϱ₂₂].
#pragma once

#include "ptqs/params.hpp"
#include "ptqs/postselection.hpp"
#include "ptqs/state.hpp"

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace ptqs::lindblad {

/// Hermitian positive semidefinite 2×2 matrix whose trace is not fixed
/// (ϱ_eff decays, ϱ_PT may exceed 1).
///
/// Stored as e^{log_scale}·M so that the renormalized state survives when
/// e^{−γt} underflows; matrix() and trace() return the materialized values.
class UnnormalizedMatrix2 {
public:
    UnnormalizedMatrix2() = default;
    explicit UnnormalizedMatrix2(const Matrix2& m, double log_scale = 0.0);

    Matrix2 matrix() const { return std::exp(log_scale_) * m_; }
    cplx operator()(int i, int j) const { return std::exp(log_scale_) * m_(i, j); }
    double trace() const { return std::exp(log_scale_) * m_.trace().real(); }
    double log_scale() const noexcept { return log_scale_; }
    const Matrix2& scaled() const noexcept { return m_; }
    /// Divides by the trace. Throws NormUnderflow when the trace is zero.
    DensityMatrix2 normalized() const;

private:
    Matrix2 m_ = Matrix2::Identity();
    double log_scale_ = 0.0;
};

struct LindbladModel {
    Matrix3 h0;
    Matrix3 jump;
    /// Generator of the effective 2×2 block in row-stacked form.
    Matrix4 liouvillian;
};

struct LiouvillianSpectrum {
    Matrix4 matrix;
    std::array<cplx, 4> eigenvalues{};
};

LindbladModel model(const PtParams& p);

/// −i[H₀, ϱ] + JϱJ† − ½{J†J, ϱ}.
Matrix3 lindblad_rhs(const Matrix3& rho, const LindbladModel& m);

/// Fixed-step RK4, no renormalization.
DensityMatrix3 integrate_lindblad(const DensityMatrix3& rho0, const PtParams& p, double t,
                                  double dt);
std::vector<DensityMatrix3> integrate_lindblad_series(const DensityMatrix3& rho0,
                                                      const PtParams& p,
                                                      std::span<const double> times,
                                                      double dt);

/// |+̃⟩_y = (|1⟩ + i|2⟩)/√2 in the three-level space.
Vector3 plus_y_3l();

/// Closed-form ϱ_t for the |+̃⟩_y probe with c_3L = e^{−γt}/(2(ω−γ)).
/// For ω − γ < 1e-3 ω (including the EP itself) an equivalent form in
/// sin(κt/2)/κ replaces the divergent prefactor.
DensityMatrix3 analytic_rho_3l(const PtParams& p, double t);

/// H_eff = (ω/2)σ_x − iγ|2⟩⟨2|.
Matrix2 effective_hamiltonian(const PtParams& p);

/// U_eff = exp(−i H_eff t) by general matrix exponential.
Matrix2 effective_propagator(const PtParams& p, double t);

/// U_eff ϱ₀ U_eff†. The scalar part tr(H_eff)/2 of the generator is taken
/// out of the exponential and kept as the log-scale −γt; the traceless rest
/// is exponentiated in closed form.
UnnormalizedMatrix2 effective_evolve(const DensityMatrix2& rho0, const PtParams& p, double t);

/// −i(H_eff ϱ − ϱ H_eff†).
Matrix2 effective_rhs(const Matrix2& rho, const PtParams& p);

/// e^{γt} ϱ_eff. Throws GainOverflow for γt > 700.
UnnormalizedMatrix2 artificial_pt(const PtParams& p, double t, const UnnormalizedMatrix2& rho_eff);

/// Conditions on {|1⟩,|2⟩}; p_fail = ϱ₃₃ and rho_a stays empty.
/// Throws EmptyBranch when p_suc < 1e-14.
PostSelectionOutcome postselect_3l(const DensityMatrix3& rho3);

/// Row-stacked Liouvillian of the effective block and its eigenvalues.
LiouvillianSpectrum liouvillian_matrix(const PtParams& p);

}  // namespace ptqs::lindblad
