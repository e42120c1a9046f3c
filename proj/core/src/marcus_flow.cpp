#include "msym/marcus_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "msym/errors.hpp"

namespace msym {

namespace {

// Stacked (P, Q) coordinates for the RK4 stages.
using Coords = std::vector<double>;

Coords stack(const PhaseState& x) {
  Coords c(x.p);
  c.insert(c.end(), x.q.begin(), x.q.end());
  return c;
}

PhaseState unstack(const Coords& c, std::size_t n) {
  return {Coords(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)),
          Coords(c.begin() + static_cast<std::ptrdiff_t>(n), c.end())};
}

class JumpField {
 public:
  JumpField(const HamiltonianSystem& system, std::span<const double> marks)
      : system_(system), marks_(marks) {}

  Coords operator()(const Coords& c) const {
    const std::size_t n = system_.dof();
    const PhaseState x = unstack(c, n);
    Coords out(2 * n, 0.0);
    for (std::size_t r = 1; r <= marks_.size(); ++r) {
      const double mark = marks_[r - 1];
      if (mark == 0.0) continue;
      const auto s = system_.sigma(r, x);
      const auto g = system_.gamma(r, x);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] -= s[i] * mark;
        out[n + i] += g[i] * mark;
      }
    }
    return out;
  }

 private:
  const HamiltonianSystem& system_;
  std::span<const double> marks_;
};

Coords axpy(const Coords& x, double h, const Coords& k) {
  Coords out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * k[i];
  return out;
}

}  // namespace

PhaseState jump_flow(const HamiltonianSystem& system, const PhaseState& state,
                     std::span<const double> marks, std::size_t substeps) {
  if (marks.size() != system.noise_count()) {
    throw DomainError("jump flow expects " + std::to_string(system.noise_count()) +
                      " marks, got " + std::to_string(marks.size()));
  }
  if (substeps < 1) throw DomainError("jump flow needs at least one substep");
  if (state.dof() != system.dof()) throw DomainError("state dimension does not match system");
  if (std::all_of(marks.begin(), marks.end(), [](double m) { return m == 0.0; })) return state;

  const JumpField field(system, marks);
  const double h = 1.0 / static_cast<double>(substeps);
  Coords x = stack(state);
  for (std::size_t k = 0; k < substeps; ++k) {
    const Coords k1 = field(x);
    const Coords k2 = field(axpy(x, 0.5 * h, k1));
    const Coords k3 = field(axpy(x, 0.5 * h, k2));
    const Coords k4 = field(axpy(x, h, k3));
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
      throw DivergenceError("jump flow substep " + std::to_string(k + 1) + " of " +
                            std::to_string(substeps));
    }
  }
  return unstack(x, system.dof());
}

PhaseState kubo_jump_closed_form(const KuboParams& params, const PhaseState& state, double mark) {
  if (mark == 0.0) return state;
  return rotate(state, params.beta * mark);
}

}  // namespace msym
