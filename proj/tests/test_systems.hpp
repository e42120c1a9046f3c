#pragma once

// Nonlinear Hamiltonian systems and finite-difference helpers shared by the
// unit tests.

#include <cmath>
#include <vector>

#include "msym/hamiltonian.hpp"
#include "msym/rng.hpp"

namespace msym::testing {

/// One dof, m = 1; both evaluators depend on P and Q so the implicit solve
/// actually iterates.
///   H0 = p^2/2 - cos q + 0.05 p^2 q^2,   H1 = 0.05 p q^2 + 0.1 sin p
inline HamiltonianSystem nonlinear_pendulum() {
  HamiltonianSystem::Term h0{
      [](const PhaseState& x) {
        const double p = x.p[0], q = x.q[0];
        return 0.5 * p * p - std::cos(q) + 0.05 * p * p * q * q;
      },
      [](const PhaseState& x) {
        const double p = x.p[0], q = x.q[0];
        return std::vector<double>{std::sin(q) + 0.1 * p * p * q};
      },
      [](const PhaseState& x) {
        const double p = x.p[0], q = x.q[0];
        return std::vector<double>{p + 0.1 * p * q * q};
      }};
  HamiltonianSystem::Term h1{
      [](const PhaseState& x) {
        const double p = x.p[0], q = x.q[0];
        return 0.05 * p * q * q + 0.1 * std::sin(p);
      },
      [](const PhaseState& x) { return std::vector<double>{0.1 * x.p[0] * x.q[0]}; },
      [](const PhaseState& x) {
        return std::vector<double>{0.05 * x.q[0] * x.q[0] + 0.1 * std::cos(x.p[0])};
      }};
  return HamiltonianSystem(1, {h0, h1});
}

/// Two dof, m = 2:
///   H0 = |p|^2/2 + |q|^2/2 + 0.1 q1^2 q2,  H1 = 0.1 (p1 q2 - p2 q1),  H2 = 0.05 p1^2 q1
inline HamiltonianSystem coupled_two_dof() {
  HamiltonianSystem::Term h0{
      [](const PhaseState& x) {
        return 0.5 * (x.p[0] * x.p[0] + x.p[1] * x.p[1] + x.q[0] * x.q[0] + x.q[1] * x.q[1]) +
               0.1 * x.q[0] * x.q[0] * x.q[1];
      },
      [](const PhaseState& x) {
        return std::vector<double>{x.q[0] + 0.2 * x.q[0] * x.q[1], x.q[1] + 0.1 * x.q[0] * x.q[0]};
      },
      [](const PhaseState& x) { return std::vector<double>{x.p[0], x.p[1]}; }};
  HamiltonianSystem::Term h1{
      [](const PhaseState& x) { return 0.1 * (x.p[0] * x.q[1] - x.p[1] * x.q[0]); },
      [](const PhaseState& x) { return std::vector<double>{-0.1 * x.p[1], 0.1 * x.p[0]}; },
      [](const PhaseState& x) { return std::vector<double>{0.1 * x.q[1], -0.1 * x.q[0]}; }};
  HamiltonianSystem::Term h2{
      [](const PhaseState& x) { return 0.05 * x.p[0] * x.p[0] * x.q[0]; },
      [](const PhaseState& x) { return std::vector<double>{0.05 * x.p[0] * x.p[0], 0.0}; },
      [](const PhaseState& x) { return std::vector<double>{0.1 * x.p[0] * x.q[0], 0.0}; }};
  return HamiltonianSystem(2, {h0, h1, h2});
}

inline PhaseState random_state(RandomStream& rng, std::size_t n, double box) {
  PhaseState x;
  for (std::size_t i = 0; i < n; ++i) x.p.push_back(rng.uniform(-box, box));
  for (std::size_t i = 0; i < n; ++i) x.q.push_back(rng.uniform(-box, box));
  return x;
}

/// Central difference of H_r along p_i (wrt_p) or q_i.
inline double fd_partial(const HamiltonianSystem& sys, std::size_t r, const PhaseState& x,
                         bool wrt_p, std::size_t i, double h) {
  PhaseState plus = x, minus = x;
  (wrt_p ? plus.p : plus.q)[i] += h;
  (wrt_p ? minus.p : minus.q)[i] -= h;
  return (sys.hamiltonian(r, plus) - sys.hamiltonian(r, minus)) / (2.0 * h);
}

}  // namespace msym::testing
