// postselection.hpp - outcome of projecting onto the PT subspace.
#pragma once

#include "ptqs/state.hpp"

#include <array>
#include <optional>

namespace ptqs {

struct PostSelectionOutcome {
    double p_suc = 0.0;
    double p_fail = 0.0;
    DensityMatrix2 rho_pt;
    /// Conditioned state of the failure branch. Absent when that branch has
    /// (numerically) zero weight or when the scheme has no such state.
    std::optional<DensityMatrix2> rho_a;
    /// Diagonal of the pre-selection state (P₁..P₄; only the first three are
    /// used by the three-level scheme).
    std::array<double, 4> populations{};
    /// False when p_suc < 1e-12: the conditioned state is numerically meaningless.
    bool reliable = true;
};

}  // namespace ptqs
