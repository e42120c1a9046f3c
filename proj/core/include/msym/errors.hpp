#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace msym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A noise specification with negative or non-finite parameters.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's domain (bad interval, index, size).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The implicit momentum solve did not reach its tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(double residual, int iterations,
                      std::optional<std::size_t> step = std::nullopt);

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  double residual_;
  int iterations_;
  std::optional<std::size_t> step_;
};

/// A state component became non-finite or exceeded the divergence bound.
///
/// `where` names the offending stage (e.g. "jump flow substep 3" or
/// "step 1812"); `step` is set by the trajectory drivers.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(std::string where,
                           std::optional<std::size_t> step = std::nullopt);

  const std::string& where() const noexcept { return where_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::string where_;
  std::optional<std::size_t> step_;
};

}  // namespace msym
