#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace msym::cli {

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line chart: one polyline per series, a frame, axis ranges and a
/// legend. Written atomically.
void write_svg_chart(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series);

}  // namespace msym::cli
