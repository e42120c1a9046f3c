#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "msym/errors.hpp"
#include "msym/hamiltonian.hpp"
#include "msym/levy_path.hpp"
#include "msym/marcus_flow.hpp"

namespace msym {

/// Any |state component| above this aborts integration.
inline constexpr double kDivergenceBound = 1e12;

struct StepControls {
  double dt = 0.08;
  double implicit_tol = 1e-12;  ///< max-norm fixed-point residual
  int implicit_max_iters = 50;
  std::size_t jump_substeps = kDefaultJumpSubsteps;

  /// Throws DomainError unless every field is in range.
  void validate() const;
};

enum class Scheme {
  kSymplectic,  ///< semi-implicit (symplectic) Euler, raw increments
  kExplicit,    ///< explicit Euler, raw increments
  kPathwise,    ///< jump-adapted: symplectic Euler drift + Marcus jump flow
  kExact,       ///< closed-form solution (Kubo)
};

std::string_view scheme_name(Scheme scheme);
/// Inverse of scheme_name; throws DomainError for unknown names.
Scheme parse_scheme(std::string_view name);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  Scheme scheme = Scheme::kSymplectic;

  std::size_t size() const noexcept { return times.size(); }
  const PhaseState& final_state() const { return states.back(); }
};

/// Thrown by the trajectory drivers when a step diverges; carries the states
/// computed before the failure.
class IntegrationDiverged : public DivergenceError {
 public:
  IntegrationDiverged(const DivergenceError& cause, std::size_t step, Trajectory partial);

  const Trajectory& partial() const noexcept { return *partial_; }

 private:
  std::shared_ptr<const Trajectory> partial_;
};

/// One step of
///   P1 = P0 - sigma_0(P1, Q0) dt - sum_r sigma_r(P1, Q0) dL_r
///   Q1 = Q0 + gamma_0(P1, Q0) dt + sum_r gamma_r(P1, Q0) dL_r
/// The P equation is solved by fixed-point iteration started at P0.
PhaseState symplectic_euler_step(const HamiltonianSystem& system, const PhaseState& state,
                                 double dt, std::span<const double> dL,
                                 const StepControls& controls);

/// One step of the explicit Euler scheme (all coefficients at (P0, Q0)).
PhaseState explicit_euler_step(const HamiltonianSystem& system, const PhaseState& state,
                               double dt, std::span<const double> dL,
                               const StepControls& controls);

/// Dispatches to the one-step map of `scheme` (symplectic or explicit only).
PhaseState one_step(Scheme scheme, const HamiltonianSystem& system, const PhaseState& state,
                    double dt, std::span<const double> dL, const StepControls& controls);

/// Uniform grid t0, t0 + dt, ..., T; the last step is shortened to land on T.
std::vector<double> uniform_grid(double t0, double T, double dt);

/// Steps `scheme` (symplectic or explicit) over uniform_grid(t0, T, dt) with
/// increments dL taken from `path`.
Trajectory integrate_fixed_grid(const HamiltonianSystem& system, Scheme scheme,
                                const PhaseState& initial, double t0, double T,
                                const LevyPath& path, const StepControls& controls);

/// Jump-adapted driver: symplectic Euler on the drift between jumps (step dt,
/// truncated at each jump), Marcus jump flow at each jump time. At a jump
/// time the stored state is the post-jump state.
Trajectory integrate_pathwise(const HamiltonianSystem& system, const PhaseState& initial,
                              double t0, double T, const LevyPath& path,
                              const StepControls& controls);

/// Writes `t,p1..pn,q1..qn` rows (17 significant digits).
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace msym
