#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "latsurf/lattice.hpp"

namespace latsurf::cli {

// One plotted data set: a polyline, or discrete markers.
struct PlotSeries {
  std::string name;
  std::vector<Vec2d> points;
  bool markers = false;  // draw circles instead of a connected line
  std::string color = "#1f77b4";
};

// Minimal self-contained SVG 1.1 emitters (single root element, no external
// references).

void write_plot_svg(std::ostream& os, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<PlotSeries>& series);

void write_polygon_svg(std::ostream& os, const std::string& title,
                       const std::vector<Vec2d>& vertices);

// CSV with a fixed header; every cell is already rendered to text.
void write_csv(std::ostream& os, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace latsurf::cli
