#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eposit/metrics.hpp"

namespace eposit::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct Box {
  std::string label;
  BoxplotSummary stats;
};

// Standalone SVG line chart; used for truth-vs-estimate curves.
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

// Standalone SVG Tukey boxplot chart.
void write_box_chart(const std::filesystem::path& path, const std::string& title,
                     const std::string& y_label, const std::vector<Box>& boxes);

}  // namespace eposit::plot
