#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "msym/analysis.hpp"
#include "msym/errors.hpp"
#include "test_systems.hpp"

namespace msym {
namespace {

TEST(MsError, WorkedValues) {
  const std::vector<std::vector<double>> zeros{{0.0, 0.0}, {0.0, 0.0}};
  EXPECT_EQ(ms_error(zeros), 0.0);
  const std::vector<std::vector<double>> single{{3.0, 4.0}};
  EXPECT_DOUBLE_EQ(ms_error(single), 5.0);
  const std::vector<std::vector<double>> two{{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_DOUBLE_EQ(ms_error(two), 1.0);
}

TEST(MsError, RejectsEmptyAndRagged) {
  EXPECT_THROW(ms_error(std::vector<std::vector<double>>{}), DomainError);
  const std::vector<std::vector<double>> ragged{{1.0, 0.0}, {1.0}};
  EXPECT_THROW(ms_error(ragged), DomainError);
}

TEST(MsError, PermutationInvariantAndHomogeneous) {
  RandomStream rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> d;
    for (int k = 0; k < 20; ++k) d.push_back({rng.normal(0, 1), rng.normal(0, 1)});
    const double base = ms_error(d);

    auto shuffled = d;
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      std::swap(shuffled[i], shuffled[static_cast<std::size_t>(rng.uniform() * (i + 1))]);
    }
    EXPECT_NEAR(ms_error(shuffled), base, 1e-14);

    const double c = rng.uniform(-5.0, 5.0);
    auto scaled = d;
    for (auto& v : scaled) {
      for (auto& x : v) x *= c;
    }
    EXPECT_NEAR(ms_error(scaled), std::abs(c) * base, 1e-13);
  }
}

TEST(EstimateOrder, RecoversPlantedSlopes) {
  const std::vector<double> dts{1e-1, 1e-2, 1e-3};
  for (double order : {0.0, 0.5, 1.0, 2.0}) {
    std::vector<double> errors;
    for (double dt : dts) errors.push_back(3.7 * std::pow(dt, order));
    const auto fit = estimate_order(dts, errors);
    EXPECT_NEAR(fit.slope, order, 1e-12);
    EXPECT_NEAR(fit.intercept, std::log(3.7), 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
  }
}

TEST(EstimateOrder, PropertyRandomPowerLaws) {
  RandomStream rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double order = rng.uniform(-1.0, 3.0);
    const double c = std::exp(rng.uniform(-5.0, 5.0));
    std::vector<double> dts, errors;
    double dt = rng.uniform(0.05, 0.5);
    for (int k = 0; k < 6; ++k, dt *= rng.uniform(0.3, 0.8)) {
      dts.push_back(dt);
      errors.push_back(c * std::pow(dt, order));
    }
    EXPECT_NEAR(estimate_order(dts, errors).slope, order, 1e-12);
  }
}

TEST(EstimateOrder, ReferenceResidual) {
  const std::vector<double> dts{0.08, 0.04, 0.02, 0.01};
  std::vector<double> errors;
  for (double dt : dts) errors.push_back(0.2 * std::sqrt(dt));
  EXPECT_LT(estimate_order(dts, errors).reference_residual, 1e-12);
  errors.clear();
  for (double dt : dts) errors.push_back(dt);
  // slope 1 data against the best slope-0.5 line: residual = 0.5 * half range of log dt
  EXPECT_NEAR(estimate_order(dts, errors).reference_residual, 0.25 * std::log(8.0), 1e-12);
}

TEST(EstimateOrder, RejectsBadInput) {
  const std::vector<double> two{0.1, 0.01};
  EXPECT_THROW(estimate_order(two, two), DomainError);
  const std::vector<double> dts{0.1, 0.01, 0.001};
  EXPECT_THROW(estimate_order(dts, std::vector<double>{1.0, 0.0, 1.0}), DomainError);
  EXPECT_THROW(estimate_order(std::vector<double>{0.1, -0.01, 0.001}, dts), DomainError);
  EXPECT_THROW(estimate_order(dts, std::vector<double>{1.0, 1.0}), DomainError);
}

TEST(OrderCsv, Format) {
  const std::vector<double> dts{0.1, 0.01, 0.001};
  const std::vector<double> errors{1.0, 0.1, 0.01};
  const auto fit = estimate_order(dts, errors);
  std::ostringstream csv, summary;
  write_order_csv(csv, fit);
  write_order_summary_csv(summary, fit);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "dt,ms_error,log_dt,log_error");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(summary.str().substr(0, summary.str().find('\n')), "slope,intercept,residual");
}

TEST(HamiltonianSeries, ExactKuboIsFlat) {
  const KuboParams params{0.1, 0.1};
  const auto sys = kubo_system(params);
  const auto path = sample_path({5.0, 0.2, 1, 2}, 50.0);
  Trajectory exact;
  for (double t = 0.0; t <= 50.0; t += 0.5) {
    exact.times.push_back(t);
    exact.states.push_back(kubo_exact(params, {0.0, 1.0}, t, path.value_at(1, t)));
  }
  for (const auto& [t, h] : monitored_series(sys, exact)) EXPECT_NEAR(h, 0.5, 1e-15) << t;
  for (const auto& [t, h] : hamiltonian_series(sys, exact, 1)) EXPECT_NEAR(h, 0.05, 1e-15) << t;
  EXPECT_THROW(hamiltonian_series(sys, exact, 2), DomainError);
}

TEST(HamiltonianSeries, ExplicitKuboStrictlyIncreasing) {
  const auto sys = kubo_system({0.1, 0.1});
  const auto path = sample_path({5.0, 0.2, 1, 2}, 20.0);
  const auto traj = integrate_fixed_grid(sys, Scheme::kExplicit, {0.0, 1.0}, 0.0, 20.0, path, {});
  const auto h = monitored_series(sys, traj);
  for (std::size_t j = 0; j + 1 < h.size(); ++j) EXPECT_GT(h[j + 1].second, h[j].second);
}

TEST(HamiltonianSeries, InitialOnlyTrajectory) {
  const auto sys = kubo_system({0.1, 0.1});
  const Trajectory single{{0.0}, {PhaseState{0.0, 1.0}}, Scheme::kSymplectic};
  const auto h = monitored_series(sys, single);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].second, 0.5);
}

TEST(OneStepJacobian, IdentityForZeroStep) {
  const double dL[] = {0.0};
  for (auto scheme : {Scheme::kSymplectic, Scheme::kExplicit}) {
    const auto j = one_step_jacobian(testing::nonlinear_pendulum(), scheme, {0.3, 1.2}, 0.0, dL, {});
    EXPECT_LE((j - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(OneStepJacobian, KuboAnalyticMatrices) {
  const auto sys = kubo_system({0.1, 0.1});
  const double dL[] = {0.0};
  const auto js = one_step_jacobian(sys, Scheme::kSymplectic, {0.0, 1.0}, 0.08, dL, {});
  Eigen::Matrix2d expected;
  expected << 1.0, -0.008, 0.008, 0.999936;
  EXPECT_LE((js - expected).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(js.determinant(), 1.0, 1e-8);

  const auto je = one_step_jacobian(sys, Scheme::kExplicit, {0.0, 1.0}, 0.08, dL, {});
  EXPECT_NEAR(je.determinant(), 1.000064, 1e-8);
}

TEST(SymplecticDefect, WorkedValues) {
  EXPECT_EQ(symplectic_defect(Eigen::MatrixXd::Identity(2, 2)), 0.0);
  EXPECT_EQ(symplectic_defect(Eigen::MatrixXd::Identity(4, 4)), 0.0);
  for (double angle : {0.3, 1.0, 2.5, -4.0}) {
    Eigen::MatrixXd rot(2, 2);
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    EXPECT_NEAR(symplectic_defect(rot), 0.0, 1e-14);
  }
  Eigen::MatrixXd stretch(2, 2);
  stretch << 2.0, 0.0, 0.0, 1.0;
  EXPECT_DOUBLE_EQ(symplectic_defect(stretch), 1.0);
}

TEST(SymplecticDefect, RejectsOddOrNonSquare) {
  EXPECT_THROW(symplectic_defect(Eigen::MatrixXd::Identity(3, 3)), DomainError);
  EXPECT_THROW(symplectic_defect(Eigen::MatrixXd::Zero(2, 4)), DomainError);
}

TEST(SymplecticDefect, TwoByTwoZeroIffUnitDeterminant) {
  RandomStream rng(17);
  for (int k = 0; k < 500; ++k) {
    Eigen::MatrixXd m(2, 2);
    m << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2);
    double det = m.determinant();
    if (det <= 1e-3) continue;
    const Eigen::MatrixXd unit = m / std::sqrt(det);
    EXPECT_LE(symplectic_defect(unit), 1e-10);
    const double s = rng.uniform(1.1, 2.0);
    EXPECT_NEAR(symplectic_defect(s * unit), s * s - 1.0, 1e-10);
  }
}

TEST(SymplecticDefect, GeneralMatchesSpectralNormDefinition) {
  // Symplectic 4x4 built from a block [[A, 0], [0, A^-T]] has zero defect;
  // scaling by s gives defect (s^2 - 1) |Jc| = s^2 - 1.
  Eigen::Matrix2d a;
  a << 2.0, 1.0, 0.5, 1.5;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
  j.topLeftCorner(2, 2) = a;
  j.bottomRightCorner(2, 2) = a.inverse().transpose();
  EXPECT_LE(symplectic_defect(j), 1e-14);
  EXPECT_NEAR(symplectic_defect(1.5 * j), 1.25, 1e-12);

  // shear [[I, S], [0, I]] with symmetric S is symplectic
  Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(4, 4);
  shear(0, 2) = 0.7;
  shear(1, 3) = -0.2;
  shear(0, 3) = shear(1, 2) = 0.4;
  EXPECT_LE(symplectic_defect(shear), 1e-14);
}

TEST(CanonicalStructure, Layout) {
  const auto jc = canonical_structure(2);
  EXPECT_EQ(jc(0, 2), 1.0);
  EXPECT_EQ(jc(2, 0), -1.0);
  EXPECT_EQ(jc(0, 0), 0.0);
  EXPECT_EQ((jc * jc + Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace msym
