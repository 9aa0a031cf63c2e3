#include "emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "latsurf/cli.hpp"

namespace latsurf::cli {

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string fmt_px(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Bounds {
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;

  void grow(const std::vector<Vec2d>& pts, bool& first) {
    for (const Vec2d& p : pts) {
      if (first) {
        xlo = xhi = p.x;
        ylo = yhi = p.y;
        first = false;
      } else {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
      }
    }
  }

  void pad() {
    if (xhi - xlo < 1e-12) {
      xlo -= 1;
      xhi += 1;
    }
    if (yhi - ylo < 1e-12) {
      ylo -= 1;
      yhi += 1;
    }
  }
};

}  // namespace

void write_plot_svg(std::ostream& os, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<PlotSeries>& series) {
  const double width = 640, height = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 50;  // margins

  Bounds b;
  bool first = true;
  for (const PlotSeries& s : series) b.grow(s.points, first);
  b.pad();

  auto px = [&](double x) {
    return ml + (x - b.xlo) / (b.xhi - b.xlo) * (width - ml - mr);
  };
  auto py = [&](double y) {
    return height - mb - (y - b.ylo) / (b.yhi - b.ylo) * (height - mt - mb);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-size=\"15\">"
     << title << "</text>\n";

  // Axes.
  os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
     << width - mr << "\" y2=\"" << height - mb
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << height - mb
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double fx = b.xlo + (b.xhi - b.xlo) * i / 4;
    double fy = b.ylo + (b.yhi - b.ylo) * i / 4;
    os << "<line x1=\"" << fmt_px(px(fx)) << "\" y1=\"" << height - mb
       << "\" x2=\"" << fmt_px(px(fx)) << "\" y2=\"" << height - mb + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt_px(px(fx)) << "\" y=\"" << height - mb + 18
       << "\" text-anchor=\"middle\">" << fmt3(fx) << "</text>\n";
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt_px(py(fy)) << "\" x2=\""
       << ml << "\" y2=\"" << fmt_px(py(fy)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << fmt_px(py(fy) + 4)
       << "\" text-anchor=\"end\">" << fmt3(fy) << "</text>\n";
  }
  os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (mt + height - mb) / 2 << ")\">" << ylabel << "</text>\n";

  double legend_y = mt + 6;
  for (const PlotSeries& s : series) {
    if (s.markers) {
      for (const Vec2d& p : s.points)
        os << "<circle cx=\"" << fmt_px(px(p.x)) << "\" cy=\""
           << fmt_px(py(p.y)) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    } else if (!s.points.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color
         << "\" stroke-width=\"1.5\" points=\"";
      for (const Vec2d& p : s.points)
        os << fmt_px(px(p.x)) << "," << fmt_px(py(p.y)) << " ";
      os << "\"/>\n";
    }
    if (!s.name.empty()) {
      os << "<rect x=\"" << width - mr - 150 << "\" y=\"" << legend_y - 9
         << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
      os << "<text x=\"" << width - mr - 136 << "\" y=\"" << legend_y << "\">"
         << s.name << "</text>\n";
      legend_y += 16;
    }
  }
  os << "</svg>\n";
}

void write_polygon_svg(std::ostream& os, const std::string& title,
                       const std::vector<Vec2d>& vertices) {
  const double width = 480, height = 480, margin = 50;
  Bounds b;
  bool first = true;
  b.grow(vertices, first);
  b.pad();
  double span = std::max(b.xhi - b.xlo, b.yhi - b.ylo);
  double cx = 0.5 * (b.xlo + b.xhi), cy = 0.5 * (b.ylo + b.yhi);
  auto px = [&](double x) {
    return width / 2 + (x - cx) / span * (width - 2 * margin);
  };
  auto py = [&](double y) {
    return height / 2 - (y - cy) / span * (height - 2 * margin);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-size=\"15\">"
     << title << "</text>\n";
  os << "<polygon fill=\"#aec7e8\" fill-opacity=\"0.5\" stroke=\"#1f77b4\" "
        "stroke-width=\"1.5\" points=\"";
  for (const Vec2d& p : vertices)
    os << fmt_px(px(p.x)) << "," << fmt_px(py(p.y)) << " ";
  os << "\"/>\n";
  // Origin cross for scale reference.
  os << "<line x1=\"" << fmt_px(px(0) - 4) << "\" y1=\"" << fmt_px(py(0))
     << "\" x2=\"" << fmt_px(px(0) + 4) << "\" y2=\"" << fmt_px(py(0))
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt_px(px(0)) << "\" y1=\"" << fmt_px(py(0) - 4)
     << "\" x2=\"" << fmt_px(px(0)) << "\" y2=\"" << fmt_px(py(0) + 4)
     << "\" stroke=\"black\"/>\n";
  os << "</svg>\n";
}

void write_csv(std::ostream& os, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  os << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

}  // namespace latsurf::cli
