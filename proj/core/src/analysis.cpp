#include "msym/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "msym/errors.hpp"
#include "msym/io.hpp"

namespace msym {

double ms_error(std::span<const std::vector<double>> differences) {
  if (differences.empty()) throw DomainError("ms_error needs at least one sample");
  const std::size_t dim = differences.front().size();
  double sum = 0.0;
  for (const auto& d : differences) {
    if (d.size() != dim) throw DomainError("ms_error samples differ in dimension");
    for (double v : d) sum += v * v;
  }
  return std::sqrt(sum / static_cast<double>(differences.size()));
}

OrderFit estimate_order(std::span<const double> dts, std::span<const double> errors) {
  if (dts.size() != errors.size()) throw DomainError("dts and errors differ in length");
  if (dts.size() < 3) throw DomainError("order fit needs at least 3 points");
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!std::all_of(dts.begin(), dts.end(), positive) ||
      !std::all_of(errors.begin(), errors.end(), positive)) {
    throw DomainError("order fit needs positive, finite step sizes and errors");
  }

  const std::size_t n = dts.size();
  std::vector<double> x(n), y(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(dts[i]);
    y[i] = std::log(errors[i]);
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("order fit needs at least two distinct step sizes");

  OrderFit fit;
  fit.dts.assign(dts.begin(), dts.end());
  fit.errors.assign(errors.begin(), errors.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ref_intercept = my - 0.5 * mx;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.intercept + fit.slope * x[i])));
    fit.reference_residual =
        std::max(fit.reference_residual, std::abs(y[i] - (ref_intercept + 0.5 * x[i])));
  }
  return fit;
}

void write_order_csv(std::ostream& out, const OrderFit& fit) {
  out << "dt,ms_error,log_dt,log_error\n";
  for (std::size_t i = 0; i < fit.dts.size(); ++i) {
    out << io::format_double(fit.dts[i]) << ',' << io::format_double(fit.errors[i]) << ','
        << io::format_double(std::log(fit.dts[i])) << ','
        << io::format_double(std::log(fit.errors[i])) << '\n';
  }
}

void write_order_summary_csv(std::ostream& out, const OrderFit& fit) {
  out << "slope,intercept,residual\n"
      << io::format_double(fit.slope) << ',' << io::format_double(fit.intercept) << ','
      << io::format_double(fit.residual) << '\n';
}

TimeSeries hamiltonian_series(const HamiltonianSystem& system, const Trajectory& trajectory,
                              std::size_t r) {
  TimeSeries out;
  out.reserve(trajectory.size());
  for (std::size_t j = 0; j < trajectory.size(); ++j) {
    out.emplace_back(trajectory.times[j], system.hamiltonian(r, trajectory.states[j]));
  }
  return out;
}

TimeSeries monitored_series(const HamiltonianSystem& system, const Trajectory& trajectory) {
  TimeSeries out;
  out.reserve(trajectory.size());
  for (std::size_t j = 0; j < trajectory.size(); ++j) {
    out.emplace_back(trajectory.times[j], system.monitored(trajectory.states[j]));
  }
  return out;
}

namespace {

Eigen::VectorXd stacked(const PhaseState& x) {
  const auto n = static_cast<Eigen::Index>(x.dof());
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = x.p[static_cast<std::size_t>(i)];
    v[n + i] = x.q[static_cast<std::size_t>(i)];
  }
  return v;
}

PhaseState unstacked(const Eigen::VectorXd& v) {
  const auto n = v.size() / 2;
  PhaseState x;
  x.p.assign(v.data(), v.data() + n);
  x.q.assign(v.data() + n, v.data() + 2 * n);
  return x;
}

}  // namespace

Eigen::MatrixXd one_step_jacobian(const HamiltonianSystem& system, Scheme scheme,
                                  const PhaseState& state, double dt,
                                  std::span<const double> dL, const StepControls& controls,
                                  double perturbation) {
  const Eigen::VectorXd x0 = stacked(state);
  const auto dim = x0.size();
  Eigen::MatrixXd jac(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::VectorXd plus = x0, minus = x0;
    plus[k] += perturbation;
    minus[k] -= perturbation;
    const auto fp = stacked(one_step(scheme, system, unstacked(plus), dt, dL, controls));
    const auto fm = stacked(one_step(scheme, system, unstacked(minus), dt, dL, controls));
    jac.col(k) = (fp - fm) / (2.0 * perturbation);
  }
  return jac;
}

Eigen::MatrixXd canonical_structure(std::size_t dof) {
  const auto n = static_cast<Eigen::Index>(dof);
  Eigen::MatrixXd jc = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  jc.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  jc.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return jc;
}

double symplectic_defect(const Eigen::MatrixXd& jacobian) {
  if (jacobian.rows() != jacobian.cols() || jacobian.rows() == 0 || jacobian.rows() % 2 != 0) {
    throw DomainError("symplectic defect needs a square matrix of even dimension");
  }
  if (jacobian.rows() == 2) {
    // J^T Jc J = det(J) Jc in 2D, and |Jc| = 1.
    return std::abs(jacobian.determinant() - 1.0);
  }
  const auto jc = canonical_structure(static_cast<std::size_t>(jacobian.rows() / 2));
  const Eigen::MatrixXd defect = jacobian.transpose() * jc * jacobian - jc;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(defect);
  return svd.singularValues()(0);
}

}  // namespace msym
