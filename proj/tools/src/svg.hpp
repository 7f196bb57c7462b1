#pragma once

#include <string>
#include <vector>

namespace cli_svg {

struct Series {
  std::string name;
  std::vector<double> x, y;
  std::string color = "#1f6fb2";
  bool dashed = false;
};

// Bin outlines drawn as bars behind the line series.
struct Bars {
  std::vector<double> lo, hi, y;
};

// Self-contained chart: axes, ticks, optional bars, line series, legend.
std::string chart(const std::string& title, const std::string& xlabel,
                  const std::string& ylabel, const Bars* bars,
                  const std::vector<Series>& lines);

}  // namespace cli_svg
