#include "ptqs/params.hpp"

#include "ptqs/errors.hpp"

#include <cmath>
#include <sstream>

namespace ptqs {

PtParams::PtParams(double omega, double gamma, double delta)
    : omega_(omega), gamma_(gamma), delta_(delta) {
    if (!std::isfinite(omega) || !std::isfinite(gamma) || !std::isfinite(delta)) {
        throw Error(ErrorCode::InvalidParams, "parameters must be finite");
    }
    if (omega <= 0.0) {
        throw Error(ErrorCode::InvalidParams, "omega must be positive");
    }
    if (gamma < 0.0) {
        throw Error(ErrorCode::InvalidParams, "gamma must be non-negative");
    }
    if (gamma > omega) {
        std::ostringstream msg;
        msg << "gamma/omega = " << gamma / omega << " lies in the broken phase";
        throw Error(ErrorCode::InvalidParams, msg.str());
    }
}

double PtParams::kappa() const noexcept {
    return std::sqrt((omega_ - gamma_) * (omega_ + gamma_));
}

PtParams PtParams::perturbed() const { return PtParams(omega_ + delta_, gamma_, 0.0); }

PtParams PtParams::with_omega(double omega) const { return PtParams(omega, gamma_, delta_); }

TimePoint TimePoint::from_time(const PtParams& p, double t) { return {t, p.kappa() * t}; }

TimePoint TimePoint::from_tau(const PtParams& p, double tau) {
    const double kappa = p.kappa();
    if (kappa == 0.0) {
        if (tau != 0.0) {
            throw Error(ErrorCode::InvalidParams, "scaled time is degenerate at the exceptional point");
        }
        return {0.0, 0.0};
    }
    return {tau / kappa, tau};
}

}  // namespace ptqs
