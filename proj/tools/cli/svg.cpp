#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "msym/io.hpp"

namespace msym::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kMargin = 60.0;
constexpr std::array<const char*, 4> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void write_svg_chart(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) {
      if (std::isfinite(v)) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      if (std::isfinite(v)) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
  }
  if (!(xmax > xmin)) xmin -= 0.5, xmax += 0.5;
  if (!(ymax > ymin)) ymin -= 0.5, ymax += 0.5;

  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  auto sx = [&](double v) { return kMargin + (v - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double v) { return kHeight - kMargin - (v - ymin) / (ymax - ymin) * plot_h; };

  io::write_file_atomic(file, [&](std::ostream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\">" << num(xmin)
        << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\">" << num(xmax) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin
        << "\" text-anchor=\"end\">" << num(ymin) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 10
        << "\" text-anchor=\"end\">" << num(ymax) << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
      const auto& s = series[k];
      const char* color = kColors[k % kColors.size()];
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
      const std::size_t n = std::min(s.x.size(), s.y.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
      }
      out << "\"/>\n";
      const double ly = kMargin + 16 + 16 * static_cast<double>(k);
      out << "<text x=\"" << kWidth - kMargin - 8 << "\" y=\"" << ly << "\" text-anchor=\"end\" fill=\""
          << color << "\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
  });
}

}  // namespace msym::cli
