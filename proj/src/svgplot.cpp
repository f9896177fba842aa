#include "hem3d/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hem3d::svg {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kMarginLeft = 70.0, kMarginRight = 20.0;
constexpr double kMarginTop = 40.0, kMarginBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b"};

struct Range {
  double lo = 0.0, hi = 1.0;
  double to_px(double v, double px_lo, double px_hi) const {
    const double f = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return px_lo + f * (px_hi - px_lo);
  }
};

Range span_of(const std::vector<Series>& series, bool x_axis) {
  Range r;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      const double v = x_axis ? x : y;
      if (!any) {
        r.lo = r.hi = v;
        any = true;
      } else {
        r.lo = std::min(r.lo, v);
        r.hi = std::max(r.hi, v);
      }
    }
  }
  if (!any) return r;
  const double pad = (r.hi - r.lo) * 0.05 + 1e-12;
  r.lo -= pad;
  r.hi += pad;
  return r;
}

std::string header() {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

void frame(std::ostringstream& out, const std::string& title,
           const std::string& x_label, const std::string& y_label,
           const Range& xr, const Range& yr) {
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"16\" font-family=\"sans-serif\">" << title << "</text>\n";
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << kWidth - kMarginLeft - kMarginRight << "\" height=\""
      << kHeight - kMarginTop - kMarginBottom
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << y_label << "</text>\n";
  // Min/max tick labels.
  out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - kMarginBottom + 16
      << "\" font-size=\"10\" font-family=\"sans-serif\">" << xr.lo
      << "</text>\n";
  out << "<text x=\"" << kWidth - kMarginRight << "\" y=\""
      << kHeight - kMarginBottom + 16
      << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
      << xr.hi << "</text>\n";
  out << "<text x=\"" << kMarginLeft - 4 << "\" y=\"" << kHeight - kMarginBottom
      << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
      << yr.lo << "</text>\n";
  out << "<text x=\"" << kMarginLeft - 4 << "\" y=\"" << kMarginTop + 10
      << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
      << yr.hi << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<Series>& series) {
  double y = kMarginTop + 14;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].label.empty()) continue;
    out << "<rect x=\"" << kWidth - kMarginRight - 140 << "\" y=\"" << y - 9
        << "\" width=\"10\" height=\"10\" fill=\""
        << kPalette[i % std::size(kPalette)] << "\"/>\n";
    out << "<text x=\"" << kWidth - kMarginRight - 126 << "\" y=\"" << y
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << series[i].label
        << "</text>\n";
    y += 16;
  }
}

bool no_data(const std::vector<Series>& series) {
  for (const auto& s : series)
    if (!s.points.empty()) return false;
  return true;
}

std::string empty_plot(const std::string& title) {
  std::ostringstream out;
  out << header();
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"16\" font-family=\"sans-serif\">" << title << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"#888\" "
         "font-family=\"sans-serif\">no data</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string plot(const std::string& title, const std::string& x_label,
                 const std::string& y_label, const std::vector<Series>& series,
                 bool connect) {
  if (no_data(series)) return empty_plot(title);
  const Range xr = span_of(series, true);
  const Range yr = span_of(series, false);
  std::ostringstream out;
  out << header();
  frame(out, title, x_label, y_label, xr, yr);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    if (connect && series[i].points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series[i].points)
        out << xr.to_px(x, kMarginLeft, kWidth - kMarginRight) << ","
            << yr.to_px(y, kHeight - kMarginBottom, kMarginTop) << " ";
      out << "\"/>\n";
    }
    for (const auto& [x, y] : series[i].points)
      out << "<circle cx=\"" << xr.to_px(x, kMarginLeft, kWidth - kMarginRight)
          << "\" cy=\"" << yr.to_px(y, kHeight - kMarginBottom, kMarginTop)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string scatter(const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<Series>& series) {
  return plot(title, x_label, y_label, series, false);
}

std::string lines(const std::string& title, const std::string& x_label,
                  const std::string& y_label,
                  const std::vector<Series>& series) {
  return plot(title, x_label, y_label, series, true);
}

std::string bars(const std::string& title, const std::string& y_label,
                 const std::vector<std::string>& group_labels,
                 const std::vector<std::string>& series_names,
                 const std::vector<std::vector<double>>& values) {
  if (group_labels.empty() || series_names.empty()) return empty_plot(title);
  double hi = 0.0;
  for (const auto& row : values)
    for (double v : row) hi = std::max(hi, v);
  if (hi <= 0.0) hi = 1.0;
  hi *= 1.05;

  std::ostringstream out;
  out << header();
  Range xr{0.0, static_cast<double>(group_labels.size())};
  Range yr{0.0, hi};
  frame(out, title, "", y_label, xr, yr);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double group_w = plot_w / group_labels.size();
  const double bar_w = group_w * 0.8 / series_names.size();
  for (std::size_t g = 0; g < group_labels.size(); ++g) {
    for (std::size_t s = 0; s < series_names.size(); ++s) {
      const double v = g < values.size() && s < values[g].size() ? values[g][s] : 0.0;
      const double x = kMarginLeft + g * group_w + group_w * 0.1 + s * bar_w;
      const double y = yr.to_px(v, kHeight - kMarginBottom, kMarginTop);
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
          << bar_w * 0.9 << "\" height=\"" << (kHeight - kMarginBottom) - y
          << "\" fill=\"" << kPalette[s % std::size(kPalette)] << "\"/>\n";
    }
    out << "<text x=\"" << kMarginLeft + (g + 0.5) * group_w << "\" y=\""
        << kHeight - kMarginBottom + 16
        << "\" text-anchor=\"middle\" font-size=\"10\" "
           "font-family=\"sans-serif\">" << group_labels[g] << "</text>\n";
  }
  std::vector<Series> legend_only;
  for (const auto& name : series_names) legend_only.push_back(Series{name, {}});
  legend(out, legend_only);
  out << "</svg>\n";
  return out.str();
}

}  // namespace hem3d::svg
