#include "msym/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "msym/errors.hpp"

namespace msym {

PhaseState::PhaseState(std::vector<double> p_, std::vector<double> q_)
    : p(std::move(p_)), q(std::move(q_)) {
  if (p.size() != q.size() || p.empty()) {
    throw DomainError("phase state needs p and q of equal, non-zero length");
  }
}

bool PhaseState::is_finite() const noexcept {
  for (double v : p) {
    if (!std::isfinite(v)) return false;
  }
  for (double v : q) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

HamiltonianSystem::HamiltonianSystem(std::size_t dof, std::vector<Term> terms,
                                     ScalarField monitored)
    : dof_(dof), terms_(std::move(terms)), monitored_(std::move(monitored)) {
  if (dof_ < 1) throw DomainError("a Hamiltonian system needs at least one degree of freedom");
  if (terms_.empty()) throw DomainError("a Hamiltonian system needs a drift term H_0");
  for (const auto& t : terms_) {
    if (!t.energy || !t.dh_dq || !t.dh_dp) throw DomainError("missing Hamiltonian evaluator");
  }
  if (!monitored_) monitored_ = terms_.front().energy;
}

const HamiltonianSystem::Term& HamiltonianSystem::term(std::size_t r) const {
  if (r >= terms_.size()) {
    throw DomainError("Hamiltonian index " + std::to_string(r) + " outside 0.." +
                      std::to_string(noise_count()));
  }
  return terms_[r];
}

std::vector<double> HamiltonianSystem::sigma(std::size_t r, const PhaseState& x) const {
  return term(r).dh_dq(x);
}

std::vector<double> HamiltonianSystem::gamma(std::size_t r, const PhaseState& x) const {
  return term(r).dh_dp(x);
}

double HamiltonianSystem::hamiltonian(std::size_t r, const PhaseState& x) const {
  return term(r).energy(x);
}

double HamiltonianSystem::monitored(const PhaseState& x) const { return monitored_(x); }

double hamiltonian_value(const HamiltonianSystem& system, std::size_t r, const PhaseState& x) {
  return system.hamiltonian(r, x);
}

namespace {

HamiltonianSystem::Term quadratic_term(double coeff) {
  return {
      [coeff](const PhaseState& x) { return 0.5 * coeff * (x.p[0] * x.p[0] + x.q[0] * x.q[0]); },
      [coeff](const PhaseState& x) { return std::vector<double>{coeff * x.q[0]}; },
      [coeff](const PhaseState& x) { return std::vector<double>{coeff * x.p[0]}; },
  };
}

}  // namespace

HamiltonianSystem kubo_system(const KuboParams& params) {
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
    throw DomainError("Kubo parameters must be finite");
  }
  return HamiltonianSystem(
      1, {quadratic_term(params.alpha), quadratic_term(params.beta)},
      [](const PhaseState& x) { return 0.5 * (x.p[0] * x.p[0] + x.q[0] * x.q[0]); });
}

PhaseState rotate(const PhaseState& x, double angle) {
  if (x.dof() != 1) throw DomainError("rotation is defined for one degree of freedom");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {x.p[0] * c - x.q[0] * s, x.p[0] * s + x.q[0] * c};
}

PhaseState kubo_exact(const KuboParams& params, const PhaseState& initial, double t, double L_t) {
  return rotate(initial, params.alpha * t + params.beta * L_t);
}

}  // namespace msym
