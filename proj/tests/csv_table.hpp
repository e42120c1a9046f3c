#pragma once

// Tiny CSV reader for the test suites: header row plus rows of doubles
// (non-numeric cells, e.g. the `kind` column, read as NaN).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "msym/io.hpp"

namespace msym::testing {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<std::string>> raw;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::out_of_range("no column " + name);
  }

  std::vector<double> values(const std::string& name) const {
    const auto c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(c));
    return out;
  }
};

inline CsvTable read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  table.header = io::split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = io::split_csv_line(line);
    std::vector<double> row;
    for (const auto& f : fields) {
      try {
        row.push_back(io::parse_double(f));
      } catch (...) {
        row.push_back(std::nan(""));
      }
    }
    table.rows.push_back(std::move(row));
    table.raw.push_back(std::move(fields));
  }
  return table;
}

inline std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("msym_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace msym::testing
