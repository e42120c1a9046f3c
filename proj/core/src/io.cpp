#include "msym/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "msym/errors.hpp"

namespace msym {

NonConvergenceError::NonConvergenceError(double residual, int iterations,
                                         std::optional<std::size_t> step)
    : Error("implicit solve did not converge after " + std::to_string(iterations) +
            " iterations (residual " + io::format_double(residual) + ")" +
            (step ? " at step " + std::to_string(*step) : std::string{})),
      residual_(residual),
      iterations_(iterations),
      step_(step) {}

DivergenceError::DivergenceError(std::string where, std::optional<std::size_t> step)
    : Error("numerical divergence in " + where +
            (step ? " (step " + std::to_string(*step) + ")" : std::string{})),
      where_(std::move(where)),
      step_(step) {}

namespace io {

std::string format_double(double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || errno == ERANGE) {
    throw DomainError("not a number: '" + owned + "'");
  }
  return value;
}

void write_file_atomic(const std::filesystem::path& target,
                       const std::function<void(std::ostream&)>& writer) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace io
}  // namespace msym
