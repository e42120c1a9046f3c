#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msym/analysis.hpp"
#include "msym/hamiltonian.hpp"
#include "msym/integrators.hpp"
#include "msym/levy_path.hpp"

namespace msym::cli {

/// Kubo experiment setup shared by the orbit, hamiltonian and converge commands.
struct KuboExperiment {
  KuboParams params;
  double rate = 5.0;
  double mark_sigma = 0.2;
  std::uint64_t seed = 1;
  PhaseState initial{0.0, 1.0};
  StepControls controls;
};

/// Exact, symplectic and explicit solutions on one shared noise path.
struct OrbitSet {
  Trajectory exact;
  Trajectory symplectic;
  Trajectory explicit_euler;
  /// One message per diverged scheme; that scheme's trajectory then holds
  /// the states computed before the blow-up.
  std::vector<std::string> divergence;
};

/// Exact Kubo solution sampled on `grid`, using the path's cumulative sum L(t_j).
Trajectory kubo_exact_on_grid(const KuboParams& params, const PhaseState& initial,
                              const LevyPath& path, const std::vector<double>& grid);

/// All three trajectories on [0, T]; T == 0 yields single-state trajectories.
OrbitSet run_orbits(const KuboExperiment& setup, double T);

/// Mean-square end-time error for each dt over `samples` paths, then the
/// log-log order fit. Sample i uses the path seed derive_seed(seed, {i}) for
/// every dt, so all step sizes see the same realisations.
OrderFit run_convergence(const KuboExperiment& setup, double T, const std::vector<double>& dts,
                         std::size_t samples, Scheme scheme);

struct DefectSample {
  bool control = false;  ///< dt = dL = 0 identity row
  double p = 0.0;
  double q = 0.0;
  double dt = 0.0;
  double dL = 0.0;
  double a = 0.0;  ///< alpha dt + beta dL
  double defect_symplectic = 0.0;
  double defect_explicit = 0.0;
};

struct DefectReport {
  std::vector<DefectSample> rows;
  double max_symplectic = 0.0;
  double max_explicit = 0.0;
  double max_control = 0.0;
  /// smallest explicit defect among rows with |a| >= 0.05 (NaN if none)
  double min_explicit_large_a = 0.0;
};

inline constexpr std::size_t kControlRows = 8;
inline constexpr double kLargeStepParameter = 0.05;

/// Random states in [-2, 2]^2, dt in (0, 0.1], dL in [-1, 1]; `samples` rows
/// plus kControlRows identity-step rows.
DefectReport run_symplectic_check(const KuboParams& params, std::size_t samples,
                                  std::uint64_t seed, const StepControls& controls);

}  // namespace msym::cli
