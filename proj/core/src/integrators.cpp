#include "msym/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "msym/io.hpp"

namespace msym {

void StepControls::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("step size dt must be > 0");
  if (!(implicit_tol > 0.0)) throw DomainError("implicit_tol must be > 0");
  if (implicit_max_iters < 1) throw DomainError("implicit_max_iters must be >= 1");
  if (jump_substeps < 1) throw DomainError("jump_substeps must be >= 1");
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kSymplectic: return "symplectic";
    case Scheme::kExplicit: return "explicit";
    case Scheme::kPathwise: return "pathwise";
    case Scheme::kExact: return "exact";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (auto s : {Scheme::kSymplectic, Scheme::kExplicit, Scheme::kPathwise, Scheme::kExact}) {
    if (scheme_name(s) == name) return s;
  }
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

IntegrationDiverged::IntegrationDiverged(const DivergenceError& cause, std::size_t step,
                                         Trajectory partial)
    : DivergenceError(cause.where(), step),
      partial_(std::make_shared<const Trajectory>(std::move(partial))) {}

namespace {

void check_step_inputs(const HamiltonianSystem& system, const PhaseState& state, double dt,
                       std::span<const double> dL) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("step size must be finite and >= 0");
  if (dL.size() != system.noise_count()) {
    throw DomainError("expected " + std::to_string(system.noise_count()) +
                      " noise increments, got " + std::to_string(dL.size()));
  }
  if (state.dof() != system.dof()) throw DomainError("state dimension does not match system");
}

void guard(const PhaseState& x, const char* where) {
  auto bad = [](double v) { return !std::isfinite(v) || std::abs(v) > kDivergenceBound; };
  if (std::any_of(x.p.begin(), x.p.end(), bad) || std::any_of(x.q.begin(), x.q.end(), bad)) {
    throw DivergenceError(where);
  }
}

// acc += scale * v
void accumulate(std::vector<double>& acc, const std::vector<double>& v, double scale) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * v[i];
}

// P0 - sigma_0(x) dt - sum_r sigma_r(x) dL_r
std::vector<double> momentum_update(const HamiltonianSystem& system, const PhaseState& x,
                                    const std::vector<double>& p0, double dt,
                                    std::span<const double> dL) {
  std::vector<double> p(p0);
  if (dt != 0.0) accumulate(p, system.sigma(0, x), -dt);
  for (std::size_t r = 1; r <= dL.size(); ++r) {
    if (dL[r - 1] != 0.0) accumulate(p, system.sigma(r, x), -dL[r - 1]);
  }
  return p;
}

// Q0 + gamma_0(x) dt + sum_r gamma_r(x) dL_r
std::vector<double> position_update(const HamiltonianSystem& system, const PhaseState& x,
                                    const std::vector<double>& q0, double dt,
                                    std::span<const double> dL) {
  std::vector<double> q(q0);
  if (dt != 0.0) accumulate(q, system.gamma(0, x), dt);
  for (std::size_t r = 1; r <= dL.size(); ++r) {
    if (dL[r - 1] != 0.0) accumulate(q, system.gamma(r, x), dL[r - 1]);
  }
  return q;
}

}  // namespace

PhaseState symplectic_euler_step(const HamiltonianSystem& system, const PhaseState& state,
                                 double dt, std::span<const double> dL,
                                 const StepControls& controls) {
  check_step_inputs(system, state, dt, dL);

  PhaseState mid = state;  // (P_k, Q0) during the iteration
  double residual = 0.0;
  bool converged = false;
  for (int it = 0; it < controls.implicit_max_iters; ++it) {
    auto next = momentum_update(system, mid, state.p, dt, dL);
    residual = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      residual = std::max(residual, std::abs(next[i] - mid.p[i]));
    }
    mid.p = std::move(next);
    if (!std::isfinite(residual)) break;
    if (residual <= controls.implicit_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergenceError(residual, controls.implicit_max_iters);

  PhaseState out{mid.p, position_update(system, mid, state.q, dt, dL)};
  guard(out, "symplectic Euler step");
  return out;
}

PhaseState explicit_euler_step(const HamiltonianSystem& system, const PhaseState& state,
                               double dt, std::span<const double> dL,
                               const StepControls& /*controls*/) {
  check_step_inputs(system, state, dt, dL);
  PhaseState out{momentum_update(system, state, state.p, dt, dL),
                 position_update(system, state, state.q, dt, dL)};
  guard(out, "explicit Euler step");
  return out;
}

PhaseState one_step(Scheme scheme, const HamiltonianSystem& system, const PhaseState& state,
                    double dt, std::span<const double> dL, const StepControls& controls) {
  switch (scheme) {
    case Scheme::kSymplectic: return symplectic_euler_step(system, state, dt, dL, controls);
    case Scheme::kExplicit: return explicit_euler_step(system, state, dt, dL, controls);
    default:
      throw DomainError("scheme '" + std::string(scheme_name(scheme)) +
                        "' has no one-step map");
  }
}

std::vector<double> uniform_grid(double t0, double T, double dt) {
  if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("step size dt must be > 0");
  if (!(T > t0)) throw DomainError("end time must exceed start time");
  // The 1e-9 slack keeps e.g. 200 / 0.08 at 2500 steps despite rounding.
  const auto steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((T - t0) / dt - 1e-9)));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = t0 + static_cast<double>(k) * dt;
  grid[steps] = T;
  return grid;
}

namespace {

[[noreturn]] void rethrow_at_step(std::size_t step, const Trajectory& partial) {
  try {
    throw;
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(e.residual(), e.iterations(), step);
  } catch (const DivergenceError& e) {
    throw IntegrationDiverged(e, step, partial);
  }
}

void check_driver_inputs(const HamiltonianSystem& system, const PhaseState& initial, double t0,
                         double T, const LevyPath& path, const StepControls& controls) {
  controls.validate();
  if (initial.dof() != system.dof()) throw DomainError("initial state dimension mismatch");
  if (!initial.is_finite()) throw DomainError("initial state must be finite");
  if (path.noise_count() != system.noise_count()) {
    throw DomainError("path has " + std::to_string(path.noise_count()) +
                      " channels but the system has " + std::to_string(system.noise_count()));
  }
  if (!(t0 >= 0.0 && T > t0)) throw DomainError("need 0 <= t0 < T");
  if (T > path.horizon()) throw DomainError("integration end time exceeds the path horizon");
}

}  // namespace

Trajectory integrate_fixed_grid(const HamiltonianSystem& system, Scheme scheme,
                                const PhaseState& initial, double t0, double T,
                                const LevyPath& path, const StepControls& controls) {
  check_driver_inputs(system, initial, t0, T, path, controls);
  if (scheme != Scheme::kSymplectic && scheme != Scheme::kExplicit) {
    throw DomainError("fixed-grid driver supports the symplectic and explicit schemes only");
  }

  const auto grid = uniform_grid(t0, T, controls.dt);
  const std::size_t m = system.noise_count();
  std::vector<std::vector<double>> increments(m);
  for (std::size_t r = 1; r <= m; ++r) increments[r - 1] = path.grid_increments(r, grid);

  Trajectory traj;
  traj.scheme = scheme;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());
  traj.times.push_back(t0);
  traj.states.push_back(initial);

  std::vector<double> dL(m);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    for (std::size_t r = 0; r < m; ++r) dL[r] = increments[r][j];
    try {
      traj.states.push_back(
          one_step(scheme, system, traj.states.back(), grid[j + 1] - grid[j], dL, controls));
    } catch (const Error&) {
      rethrow_at_step(j, traj);
    }
    traj.times.push_back(grid[j + 1]);
  }
  return traj;
}

Trajectory integrate_pathwise(const HamiltonianSystem& system, const PhaseState& initial,
                              double t0, double T, const LevyPath& path,
                              const StepControls& controls) {
  check_driver_inputs(system, initial, t0, T, path, controls);

  const std::size_t m = system.noise_count();
  const std::vector<double> no_noise(m, 0.0);
  Trajectory traj;
  traj.scheme = Scheme::kPathwise;
  traj.times.push_back(t0);
  traj.states.push_back(initial);
  std::size_t step = 0;

  auto drift_to = [&](double target) {
    const double from = traj.times.back();
    if (!(target > from)) return;
    const auto grid = uniform_grid(from, target, controls.dt);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j, ++step) {
      try {
        traj.states.push_back(symplectic_euler_step(system, traj.states.back(),
                                                    grid[j + 1] - grid[j], no_noise, controls));
      } catch (const Error&) {
        rethrow_at_step(step, traj);
      }
      traj.times.push_back(grid[j + 1]);
    }
  };

  const auto jumps = path.jumps_in(t0, T);
  std::vector<double> marks(m);
  for (std::size_t k = 0; k < jumps.size();) {
    const double tau = jumps[k].time;
    std::fill(marks.begin(), marks.end(), 0.0);
    for (; k < jumps.size() && jumps[k].time == tau; ++k) marks[jumps[k].channel - 1] += jumps[k].mark;

    drift_to(tau);
    try {
      traj.states.back() = jump_flow(system, traj.states.back(), marks, controls.jump_substeps);
    } catch (const Error&) {
      rethrow_at_step(step, traj);
    }
    ++step;
  }
  drift_to(T);
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const std::size_t n = trajectory.states.empty() ? 1 : trajectory.states.front().dof();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",p" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",q" << i;
  out << '\n';
  for (std::size_t j = 0; j < trajectory.size(); ++j) {
    out << io::format_double(trajectory.times[j]);
    for (double v : trajectory.states[j].p) out << ',' << io::format_double(v);
    for (double v : trajectory.states[j].q) out << ',' << io::format_double(v);
    out << '\n';
  }
}

}  // namespace msym
