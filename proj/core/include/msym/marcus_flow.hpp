#pragma once

#include <cstddef>
#include <span>

#include "msym/hamiltonian.hpp"

namespace msym {

inline constexpr std::size_t kDefaultJumpSubsteps = 16;

/// Marcus jump map: xi(1) for
///   dxi_P/ds = -sum_r sigma_r(xi) R_r,   dxi_Q/ds = sum_r gamma_r(xi) R_r,   s in [0, 1],
/// started at `state`. `marks[r-1]` is the jump of channel r; simultaneous
/// marks are combined into one vector field. Integrated with classical RK4
/// on `substeps` equal steps.
///
/// Throws DomainError for a wrong mark count or zero substeps, and
/// DivergenceError naming the substep if the state turns non-finite.
PhaseState jump_flow(const HamiltonianSystem& system, const PhaseState& state,
                     std::span<const double> marks, std::size_t substeps = kDefaultJumpSubsteps);

/// Exact Kubo jump: rotation of `state` by beta * mark.
PhaseState kubo_jump_closed_form(const KuboParams& params, const PhaseState& state, double mark);

}  // namespace msym
