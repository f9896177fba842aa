#pragma once
#include <string>
#include <utility>
#include <vector>

namespace hem3d {

// Static SVG emitters for run artifacts. No interactivity; axes always
// cover every plotted point. Empty input yields a "no data" placeholder.
namespace svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string scatter(const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<Series>& series);

std::string lines(const std::string& title, const std::string& x_label,
                  const std::string& y_label,
                  const std::vector<Series>& series);

// Grouped bars: one group per label, one bar per series name.
std::string bars(const std::string& title, const std::string& y_label,
                 const std::vector<std::string>& group_labels,
                 const std::vector<std::string>& series_names,
                 const std::vector<std::vector<double>>& values);

}  // namespace svg
}  // namespace hem3d
