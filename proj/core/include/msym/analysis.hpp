#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "msym/hamiltonian.hpp"
#include "msym/integrators.hpp"

namespace msym {

/// Root mean square of the Euclidean norms of `differences`, i.e. the
/// Monte-Carlo estimate of (E|x|^2)^(1/2).
double ms_error(std::span<const std::vector<double>> differences);

/// Least-squares fit log(error) = intercept + slope * log(dt).
struct OrderFit {
  std::vector<double> dts;
  std::vector<double> errors;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< max |log-residual| of the fitted line
  /// max |log-residual| against the best line of slope 0.5
  double reference_residual = 0.0;
};

/// Needs at least 3 points, all positive and finite.
OrderFit estimate_order(std::span<const double> dts, std::span<const double> errors);

/// CSV `dt,ms_error,log_dt,log_error`.
void write_order_csv(std::ostream& out, const OrderFit& fit);
/// CSV `slope,intercept,residual` with one data row.
void write_order_summary_csv(std::ostream& out, const OrderFit& fit);

using TimeSeries = std::vector<std::pair<double, double>>;

/// (t_j, H_r(x_j)) along the trajectory.
TimeSeries hamiltonian_series(const HamiltonianSystem& system, const Trajectory& trajectory,
                              std::size_t r);
/// (t_j, monitored H(x_j)) along the trajectory.
TimeSeries monitored_series(const HamiltonianSystem& system, const Trajectory& trajectory);

inline constexpr double kJacobianPerturbation = 1e-6;

/// Central-difference Jacobian of the one-step map of `scheme` with respect to
/// the stacked coordinates (p_1..p_n, q_1..q_n).
Eigen::MatrixXd one_step_jacobian(const HamiltonianSystem& system, Scheme scheme,
                                  const PhaseState& state, double dt,
                                  std::span<const double> dL, const StepControls& controls,
                                  double perturbation = kJacobianPerturbation);

/// ((0, I), (-I, 0)) of size 2n.
Eigen::MatrixXd canonical_structure(std::size_t dof);

/// Spectral norm of J^T Jc J - Jc. Throws DomainError unless J is square
/// with even dimension.
double symplectic_defect(const Eigen::MatrixXd& jacobian);

}  // namespace msym
