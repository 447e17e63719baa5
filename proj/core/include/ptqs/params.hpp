// params.hpp - physical parameters of the PT-symmetric dimer and time points.
#pragma once

namespace ptqs {

/// Coupling ω, gain-loss rate γ and perturbation δ, all in rad/s.
///
/// Only the unbroken phase 0 ≤ γ ≤ ω is representable; γ = ω is the
/// exceptional point and is accepted.
class PtParams {
public:
    PtParams() = default;
    PtParams(double omega, double gamma, double delta = 0.0);

    double omega() const noexcept { return omega_; }
    double gamma() const noexcept { return gamma_; }
    double delta() const noexcept { return delta_; }

    /// κ = √(ω² − γ²), evaluated as √((ω−γ)(ω+γ)) to keep precision near the EP.
    double kappa() const noexcept;
    double ratio() const noexcept { return gamma_ / omega_; }
    bool at_exceptional_point() const noexcept { return gamma_ == omega_; }

    /// Parameters with ω replaced by Ω = ω + δ and δ cleared.
    PtParams perturbed() const;
    PtParams with_omega(double omega) const;

private:
    double omega_ = 1.0;
    double gamma_ = 0.0;
    double delta_ = 0.0;
};

/// Physical time t and the scaled time τ = κt used for reporting.
struct TimePoint {
    double t = 0.0;
    double tau = 0.0;

    static TimePoint from_time(const PtParams& p, double t);
    /// Throws InvalidParams for τ ≠ 0 at the exceptional point.
    static TimePoint from_tau(const PtParams& p, double tau);
};

}  // namespace ptqs
