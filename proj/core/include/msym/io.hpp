#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace msym::io {

/// Shortest-round-trip-safe decimal: printf "%.17g".
std::string format_double(double value);

/// Splits one CSV line on commas (no quoting; the library never writes any).
std::vector<std::string> split_csv_line(std::string_view line);

/// Parses a full-string double; throws DomainError on trailing garbage.
double parse_double(std::string_view text);

/// Writes through `writer` into `<target>.tmp` and renames over `target`,
/// so readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& target,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace msym::io
