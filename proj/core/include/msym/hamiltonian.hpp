#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace msym {

/// Canonical phase-space point (P, Q), each of length n.
struct PhaseState {
  std::vector<double> p;
  std::vector<double> q;

  PhaseState() = default;
  PhaseState(std::vector<double> p_, std::vector<double> q_);
  /// One degree of freedom convenience constructor.
  PhaseState(double p_, double q_) : p{p_}, q{q_} {}

  std::size_t dof() const noexcept { return p.size(); }
  bool is_finite() const noexcept;

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

using ScalarField = std::function<double(const PhaseState&)>;
using VectorField = std::function<std::vector<double>(const PhaseState&)>;

/// Hamiltonian SDE
///   dP = -sigma_0 dt - sum_r sigma_r <> dL^r,   dQ = gamma_0 dt + sum_r gamma_r <> dL^r
/// with sigma_r = dH_r/dQ and gamma_r = dH_r/dP, r = 0 (drift) .. m (noise).
///
/// The system stores caller-supplied evaluators; it does not differentiate
/// H_r itself, so the gradient identities are the caller's responsibility
/// (see the finite-difference checks in the tests).
class HamiltonianSystem {
 public:
  struct Term {
    ScalarField energy;  ///< H_r
    VectorField dh_dq;   ///< sigma_r
    VectorField dh_dp;   ///< gamma_r
  };

  /// `terms[0]` is the drift Hamiltonian, `terms[1..m]` the noise ones.
  /// `monitored` is the invariant reported by the analysis code; it defaults
  /// to H_0 when empty.
  HamiltonianSystem(std::size_t dof, std::vector<Term> terms, ScalarField monitored = {});

  std::size_t dof() const noexcept { return dof_; }
  std::size_t noise_count() const noexcept { return terms_.size() - 1; }

  std::vector<double> sigma(std::size_t r, const PhaseState& x) const;
  std::vector<double> gamma(std::size_t r, const PhaseState& x) const;
  double hamiltonian(std::size_t r, const PhaseState& x) const;
  double monitored(const PhaseState& x) const;

 private:
  const Term& term(std::size_t r) const;

  std::size_t dof_;
  std::vector<Term> terms_;
  ScalarField monitored_;
};

/// H_r(P, Q); throws DomainError when r > m.
double hamiltonian_value(const HamiltonianSystem& system, std::size_t r, const PhaseState& x);

struct KuboParams {
  double alpha = 0.1;
  double beta = 0.1;
};

/// Linear Kubo oscillator with one multiplicative noise channel:
/// H_0 = alpha (p^2 + q^2) / 2, H_1 = beta (p^2 + q^2) / 2, monitored
/// H = (p^2 + q^2) / 2.
HamiltonianSystem kubo_system(const KuboParams& params);

/// Exact Kubo solution: `initial` rotated by theta = alpha t + beta L_t.
PhaseState kubo_exact(const KuboParams& params, const PhaseState& initial, double t, double L_t);

/// Rotation of a one-dof state by `angle` (counter-clockwise in the (p, q) plane).
PhaseState rotate(const PhaseState& x, double angle);

}  // namespace msym
