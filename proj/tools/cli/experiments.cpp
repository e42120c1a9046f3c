#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msym/rng.hpp"

namespace msym::cli {

Trajectory kubo_exact_on_grid(const KuboParams& params, const PhaseState& initial,
                              const LevyPath& path, const std::vector<double>& grid) {
  Trajectory traj;
  traj.scheme = Scheme::kExact;
  traj.times = grid;
  traj.states.reserve(grid.size());
  double level = grid.front() > 0.0 ? path.value_at(1, grid.front()) : 0.0;
  const auto increments = grid.size() > 1 ? path.grid_increments(1, grid) : std::vector<double>{};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j > 0) level += increments[j - 1];
    traj.states.push_back(kubo_exact(params, initial, grid[j], level));
  }
  return traj;
}

namespace {

LevyPathSpec path_spec(const KuboExperiment& setup, std::uint64_t seed) {
  return {setup.rate, setup.mark_sigma, 1, seed};
}

Trajectory single_state(const PhaseState& x, Scheme scheme) {
  return {{0.0}, {x}, scheme};
}

}  // namespace

OrbitSet run_orbits(const KuboExperiment& setup, double T) {
  OrbitSet out;
  if (T == 0.0) {
    out.exact = single_state(setup.initial, Scheme::kExact);
    out.symplectic = single_state(setup.initial, Scheme::kSymplectic);
    out.explicit_euler = single_state(setup.initial, Scheme::kExplicit);
    return out;
  }
  const auto system = kubo_system(setup.params);
  const auto path = sample_path(path_spec(setup, setup.seed), T);
  const auto grid = uniform_grid(0.0, T, setup.controls.dt);

  out.exact = kubo_exact_on_grid(setup.params, setup.initial, path, grid);
  auto integrate = [&](Scheme scheme, Trajectory& target) {
    try {
      target = integrate_fixed_grid(system, scheme, setup.initial, 0.0, T, path, setup.controls);
    } catch (const IntegrationDiverged& e) {
      target = e.partial();
      out.divergence.push_back(std::string(scheme_name(scheme)) + ": " + e.what());
    }
  };
  integrate(Scheme::kSymplectic, out.symplectic);
  integrate(Scheme::kExplicit, out.explicit_euler);
  return out;
}

OrderFit run_convergence(const KuboExperiment& setup, double T, const std::vector<double>& dts,
                         std::size_t samples, Scheme scheme) {
  const auto system = kubo_system(setup.params);
  std::vector<std::vector<std::vector<double>>> diffs(dts.size());
  for (auto& d : diffs) d.reserve(samples);

  for (std::size_t i = 0; i < samples; ++i) {
    const auto path = sample_path(path_spec(setup, derive_seed(setup.seed, {i})), T);
    const auto exact = kubo_exact(setup.params, setup.initial, T, path.value_at(1, T));
    for (std::size_t k = 0; k < dts.size(); ++k) {
      StepControls controls = setup.controls;
      controls.dt = dts[k];
      const auto traj = scheme == Scheme::kPathwise
                            ? integrate_pathwise(system, setup.initial, 0.0, T, path, controls)
                            : integrate_fixed_grid(system, scheme, setup.initial, 0.0, T, path,
                                                   controls);
      const auto& end = traj.final_state();
      diffs[k].push_back({end.p[0] - exact.p[0], end.q[0] - exact.q[0]});
    }
  }

  std::vector<double> errors;
  errors.reserve(dts.size());
  for (const auto& d : diffs) errors.push_back(ms_error(d));
  return estimate_order(dts, errors);
}

DefectReport run_symplectic_check(const KuboParams& params, std::size_t samples,
                                  std::uint64_t seed, const StepControls& controls) {
  const auto system = kubo_system(params);
  RandomStream rng(derive_seed(seed, {0x73796d70ULL}));
  DefectReport report;
  report.min_explicit_large_a = std::numeric_limits<double>::quiet_NaN();

  auto evaluate = [&](DefectSample row) {
    const PhaseState x{row.p, row.q};
    const double dL[] = {row.dL};
    row.a = params.alpha * row.dt + params.beta * row.dL;
    row.defect_symplectic = symplectic_defect(
        one_step_jacobian(system, Scheme::kSymplectic, x, row.dt, dL, controls));
    row.defect_explicit =
        symplectic_defect(one_step_jacobian(system, Scheme::kExplicit, x, row.dt, dL, controls));
    return row;
  };

  for (std::size_t k = 0; k < kControlRows; ++k) {
    DefectSample row;
    row.control = true;
    row.p = rng.uniform(-2.0, 2.0);
    row.q = rng.uniform(-2.0, 2.0);
    row = evaluate(row);
    report.max_control =
        std::max({report.max_control, row.defect_symplectic, row.defect_explicit});
    report.rows.push_back(row);
  }
  for (std::size_t k = 0; k < samples; ++k) {
    DefectSample row;
    row.p = rng.uniform(-2.0, 2.0);
    row.q = rng.uniform(-2.0, 2.0);
    row.dt = 0.1 * (1.0 - rng.uniform());  // (0, 0.1]
    row.dL = rng.uniform(-1.0, 1.0);
    row = evaluate(row);
    report.max_symplectic = std::max(report.max_symplectic, row.defect_symplectic);
    report.max_explicit = std::max(report.max_explicit, row.defect_explicit);
    if (std::abs(row.a) >= kLargeStepParameter) {
      report.min_explicit_large_a = std::isnan(report.min_explicit_large_a)
                                        ? row.defect_explicit
                                        : std::min(report.min_explicit_large_a, row.defect_explicit);
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace msym::cli
