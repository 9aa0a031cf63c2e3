#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "emit.hpp"
#include "latsurf/bond_count.hpp"
#include "latsurf/cli.hpp"
#include "latsurf/energy.hpp"
#include "latsurf/scaling.hpp"

namespace latsurf::cli {

namespace {

// Output sink: a named file when requested, otherwise the fallback stream.
struct OutTarget {
  std::ofstream file;
  std::ostream* os = nullptr;
  std::string path;

  bool open(const std::string& p, std::ostream& fallback, std::ostream& err) {
    path = p;
    if (p.empty()) {
      os = &fallback;
      return true;
    }
    file.open(p, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << p << "'\n";
      return false;
    }
    os = &file;
    return true;
  }

  bool finish(std::ostream& err) {
    if (file.is_open()) {
      file.flush();
      if (!file) {
        err << "error: failed while writing '" << path << "'\n";
        return false;
      }
    }
    return true;
  }
};

std::optional<std::vector<double>> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(item, &used);
      while (used < item.size() && std::isspace((unsigned char)item[used]))
        ++used;
      if (used != item.size()) return std::nullopt;
      out.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<Vec2i> parse_bond(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    size_t ux = 0, uy = 0;
    std::string sx = text.substr(0, comma), sy = text.substr(comma + 1);
    i64 x = std::stoll(sx, &ux);
    i64 y = std::stoll(sy, &uy);
    if (ux != sx.size() || uy != sy.size()) return std::nullopt;
    return Vec2i{x, y};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Opts {
  std::string config;
  double epsilon_override = -1;
  double scale = 1;
  std::string bond;
  std::string mode = "exact";
  i64 k = 1;
  std::string density = "circ";
  int samples = 360;
  int wulff_samples = 64;
  i64 max_miller = 10;
  i64 wulff_max_miller = 20;
  std::string kind;
  std::string scales;
  std::string out_path;
  std::string svg_path;
};

std::string breakdown_lines(const EnergyBreakdown& b) {
  std::ostringstream os;
  os << "bulk = " << fmt12(b.bulk) << "\n";
  os << "surface = " << fmt12(b.surface) << "\n";
  os << "corner = " << fmt12(b.corner) << "\n";
  os << "residual = " << fmt12(b.residual) << "\n";
  os << "total = " << fmt12(b.total) << "\n";
  os << "truncation_radius = " << fmt12(b.truncation_radius) << "\n";
  return os.str();
}

int run_count(const RunConfig& cfg, const Opts& o, std::ostream& out,
              std::ostream& err) {
  if (!cfg.region) {
    err << "config: 'count' needs a region\n";
    return 2;
  }
  RemainderSample s = lattice_remainder(*cfg.region, o.scale);
  out << "scale = " << fmt12(s.scale) << "\n";
  out << "count = " << s.count << "\n";
  out << "measure = " << fmt12(s.measure) << "\n";
  out << "remainder = " << fmt12(s.remainder) << "\n";

  const auto* poly = std::get_if<ConvexLatticePolygon>(&*cfg.region);
  if (poly && o.scale == std::floor(o.scale) && o.scale >= 1) {
    PickCount pick = pick_count(poly->scaled((i64)o.scale));
    out << "pick_total = " << pick.total << "\n";
    out << "pick_boundary = " << pick.boundary << "\n";
    out << "pick_interior = " << pick.interior << "\n";
    bool match = pick.total == s.count;
    out << "pick_matches_enumeration = " << (match ? "yes" : "no") << "\n";
    if (!match) {
      err << "error: closed-form point count disagrees with enumeration\n";
      return 1;
    }
  }
  return 0;
}

int run_bonds(const RunConfig& cfg, const Opts& o, std::ostream& out,
              std::ostream& err) {
  if (!cfg.region) {
    err << "config: 'bonds' needs a region\n";
    return 2;
  }
  auto w = parse_bond(o.bond);
  if (!w) {
    err << "usage error: --w expects two integers like 1,-2\n";
    return 2;
  }
  i64 brute = bond_number_brute(*cfg.region, *w);
  out << "w = " << w->x << "," << w->y << "\n";
  out << "count_brute = " << brute << "\n";

  const auto* poly = std::get_if<ConvexLatticePolygon>(&*cfg.region);
  if (!poly) {
    out << "count_closed_form = not applicable (closed form needs a lattice "
           "polygon)\n";
    return 0;
  }
  try {
    i64 closed = bond_number(*poly, *w);
    out << "count_closed_form = " << closed << "\n";
    bool match = closed == brute;
    out << "match = " << (match ? "yes" : "no") << "\n";
    if (!match) {
      err << "error: closed-form bond count disagrees with enumeration\n";
      return 1;
    }
  } catch (const std::domain_error& e) {
    out << "count_closed_form = not applicable (" << e.what() << ")\n";
  }
  return 0;
}

int run_energy(const RunConfig& cfg, const Opts& o, std::ostream& out,
               std::ostream& err) {
  if (!cfg.region || !cfg.potential) {
    err << "config: 'energy' needs a region and a potential\n";
    return 2;
  }
  if (o.mode == "brute") {
    double total = energy_brute(*cfg.region, cfg.F, *cfg.potential, cfg.epsilon);
    out << "total = " << fmt12(total) << "\n";
    out << "truncation_radius = "
        << fmt12(truncation_radius(*cfg.potential, cfg.F, cfg.epsilon)) << "\n";
    return 0;
  }
  const auto* poly = std::get_if<ConvexLatticePolygon>(&*cfg.region);
  if (!poly) {
    err << "config: energy --mode " << o.mode
        << " needs a lattice_polygon region\n";
    return 2;
  }
  if (o.mode == "exact") {
    const auto* table = std::get_if<FiniteTable>(&*cfg.potential);
    if (!table) {
      err << "config: energy --mode exact needs a finite_table potential\n";
      return 2;
    }
    out << breakdown_lines(energy_exact(*poly, cfg.F, *table));
    return 0;
  }
  // scaled
  out << "k = " << o.k << "\n";
  out << breakdown_lines(
      scaled_energy_decomposition(*poly, o.k, cfg.F, *cfg.potential,
                                  cfg.epsilon));
  return 0;
}

// Primitive lattice directions with |n| <= max_norm, ordered by angle.
std::vector<Vec2i> miller_sweep(i64 max_norm) {
  std::vector<Vec2i> dirs;
  for (i64 a = -max_norm; a <= max_norm; ++a)
    for (i64 b = -max_norm; b <= max_norm; ++b) {
      Vec2i m{a, b};
      if (!is_zero(m) && gcd_of(m) == 1 && norm_sq(m) <= max_norm * max_norm)
        dirs.push_back(m);
    }
  auto angle_of = [](Vec2i m) {
    double ang = std::atan2((double)m.y, (double)m.x);
    return ang < 0 ? ang + 2 * M_PI : ang;
  };
  std::sort(dirs.begin(), dirs.end(), [&](Vec2i p, Vec2i q) {
    return angle_of(p) < angle_of(q);
  });
  return dirs;
}

int run_gamma(const RunConfig& cfg, const Opts& o, std::ostream& out,
              std::ostream& err) {
  if (!cfg.potential) {
    err << "config: 'gamma' needs a potential\n";
    return 2;
  }
  auto bonds = deformed_bond_values(*cfg.potential, cfg.F, cfg.epsilon);
  auto continuous = [&](Vec2d n) {
    KahanSum acc;
    for (const auto& [w, phi] : bonds)
      acc.add(std::abs((double)w.x * n.x + (double)w.y * n.y) * phi);
    return -0.25 * acc.value();
  };
  auto faceted = [&](Vec2i m) {
    KahanSum acc;
    for (const auto& [w, phi] : bonds)
      acc.add((double)(iabs(dot(w, m)) - 1) * phi);
    return -acc.value() / (4 * norm(m));
  };
  double stored = 0;
  {
    KahanSum acc;
    for (const auto& [w, phi] : bonds) acc.add(phi);
    stored = 0.5 * acc.value();
  }

  std::vector<std::vector<std::string>> rows;
  PlotSeries curve{"continuous", {}, false, "#1f77b4"};
  PlotSeries marks{"lattice directions", {}, true, "#d62728"};

  if (o.density == "circ" || o.density == "hat") {
    for (int j = 0; j < o.samples; ++j) {
      double ang = 2 * M_PI * j / o.samples;
      double g = continuous({std::cos(ang), std::sin(ang)});
      if (o.density == "hat")
        rows.push_back({fmt12(ang), fmt12(g), "curve"});
      else
        rows.push_back({fmt12(ang), fmt12(g)});
      curve.points.push_back({ang, g});
    }
  }
  if (o.density == "diamond" || o.density == "hat") {
    for (Vec2i m : miller_sweep(o.max_miller)) {
      double ang = std::atan2((double)m.y, (double)m.x);
      if (ang < 0) ang += 2 * M_PI;
      double len = norm(m);
      double g;
      if (o.density == "diamond") {
        g = faceted(m);
        rows.push_back({fmt12(ang), fmt12(g)});
      } else {
        g = continuous({(double)m.x / len, (double)m.y / len}) +
            0.5 * stored / len;
        rows.push_back({fmt12(ang), fmt12(g), "marker"});
      }
      marks.points.push_back({ang, g});
    }
  }

  OutTarget target;
  if (!target.open(o.out_path, out, err)) return 1;
  write_csv(*target.os,
            o.density == "hat" ? "theta,gamma,kind" : "theta,gamma", rows);
  if (!target.finish(err)) return 1;

  if (!o.svg_path.empty()) {
    OutTarget svg;
    if (!svg.open(o.svg_path, out, err)) return 1;
    std::vector<PlotSeries> series;
    if (!curve.points.empty()) series.push_back(curve);
    if (!marks.points.empty()) series.push_back(marks);
    write_plot_svg(*svg.os, "surface energy density", "theta", "gamma", series);
    if (!svg.finish(err)) return 1;
  }
  return 0;
}

int run_wulff(const RunConfig& cfg, const Opts& o, std::ostream& out,
              std::ostream& err) {
  if (!cfg.potential) {
    err << "config: 'wulff' needs a potential\n";
    return 2;
  }
  std::vector<Vec2d> verts =
      wulff_shape(cfg.F, *cfg.potential, o.wulff_samples, cfg.epsilon,
                  o.density == "hat", o.wulff_max_miller);
  out << "vertex_count = " << verts.size() << "\n";

  std::vector<std::vector<std::string>> rows;
  rows.reserve(verts.size());
  for (const Vec2d& v : verts) rows.push_back({fmt12(v.x), fmt12(v.y)});

  OutTarget target;
  if (!target.open(o.out_path, out, err)) return 1;
  write_csv(*target.os, "x,y", rows);
  if (!target.finish(err)) return 1;

  if (!o.svg_path.empty()) {
    OutTarget svg;
    if (!svg.open(o.svg_path, out, err)) return 1;
    write_polygon_svg(*svg.os, "equilibrium crystal shape", verts);
    if (!svg.finish(err)) return 1;
  }
  return 0;
}

void print_fit(std::ostream& out, const char* label,
               const std::vector<std::pair<double, double>>& xy) {
  try {
    SlopeFit fit = fit_loglog(xy);
    out << label << " = " << fmt12(fit.slope) << "\n";
    out << label << "_ci95_half_width = " << fmt12(fit.ci_half_width) << "\n";
  } catch (const std::exception& e) {
    out << label << " = undefined (" << e.what() << ")\n";
  }
}

int run_study(const RunConfig& cfg, const Opts& o, std::ostream& out,
              std::ostream& err) {
  if (!cfg.region) {
    err << "config: 'study' needs a region\n";
    return 2;
  }
  auto scales = parse_number_list(o.scales);
  if (!scales) {
    err << "usage error: --scales expects numbers like 4,8,16\n";
    return 2;
  }
  for (double s : *scales)
    if (!(s > 0)) {
      err << "usage error: scales must be positive\n";
      return 2;
    }

  OutTarget target;
  std::vector<std::vector<std::string>> rows;

  if (o.kind == "remainder") {
    auto samples = remainder_study(*cfg.region, *scales);
    std::vector<std::pair<double, double>> xy;
    for (const RemainderSample& s : samples) {
      rows.push_back({fmt12(s.scale), std::to_string(s.count),
                      fmt12(s.measure), fmt12(s.remainder)});
      xy.emplace_back(s.scale, s.remainder);
    }
    if (!target.open(o.out_path, out, err)) return 1;
    write_csv(*target.os, "scale,count,measure,remainder", rows);
    if (!target.finish(err)) return 1;
    print_fit(out, "growth_exponent", xy);
    return 0;
  }

  if (!cfg.potential) {
    err << "config: 'study --kind " << o.kind << "' needs a potential\n";
    return 2;
  }

  auto integer_scales = [&]() -> std::optional<std::vector<i64>> {
    std::vector<i64> ks;
    for (double s : *scales) {
      if (s != std::floor(s) || s < 1) return std::nullopt;
      ks.push_back((i64)s);
    }
    return ks;
  };

  if (o.kind == "decomposition") {
    const auto* poly = std::get_if<ConvexLatticePolygon>(&*cfg.region);
    if (!poly) {
      err << "config: decomposition studies need a lattice_polygon region\n";
      return 2;
    }
    auto ks = integer_scales();
    if (!ks) {
      err << "usage error: decomposition studies need integer scales\n";
      return 2;
    }
    std::vector<std::pair<double, double>> xy;
    for (i64 k : *ks) {
      EnergyBreakdown b =
          scaled_energy_decomposition(*poly, k, cfg.F, *cfg.potential,
                                      cfg.epsilon);
      rows.push_back({std::to_string(k), fmt12(b.bulk), fmt12(b.surface),
                      fmt12(b.corner), fmt12(b.residual), fmt12(b.total),
                      fmt12(b.truncation_radius)});
      xy.emplace_back((double)k, b.residual);
    }
    if (!target.open(o.out_path, out, err)) return 1;
    write_csv(*target.os, "k,bulk,surface,corner,residual,total,truncation_radius",
              rows);
    if (!target.finish(err)) return 1;
    print_fit(out, "residual_exponent", xy);
    return 0;
  }

  // kind == "slope": smooth or mixed boundary residual decay
  std::vector<std::pair<double, double>> xy;
  if (const auto* mixed = std::get_if<MixedRegion>(&*cfg.region)) {
    auto ks = integer_scales();
    if (!ks) {
      err << "usage error: mixed-region slope studies need integer scales\n";
      return 2;
    }
    for (i64 k : *ks) {
      EnergyBreakdown b =
          mixed_energy_residual(*mixed, k, cfg.F, *cfg.potential, cfg.epsilon);
      rows.push_back({std::to_string(k), fmt12(b.bulk), fmt12(b.surface),
                      fmt12(b.residual), fmt12(b.total),
                      fmt12(b.truncation_radius)});
      xy.emplace_back((double)k, b.residual);
    }
  } else {
    for (double r : *scales) {
      EnergyBreakdown b =
          smooth_energy_residual(*cfg.region, r, cfg.F, *cfg.potential,
                                 cfg.epsilon);
      rows.push_back({fmt12(r), fmt12(b.bulk), fmt12(b.surface),
                      fmt12(b.residual), fmt12(b.total),
                      fmt12(b.truncation_radius)});
      xy.emplace_back(r, b.residual);
    }
  }
  if (!target.open(o.out_path, out, err)) return 1;
  write_csv(*target.os, "scale,bulk,surface,residual,total,truncation_radius",
            rows);
  if (!target.finish(err)) return 1;
  print_fit(out, "residual_exponent", xy);
  return 0;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  Opts o;
  CLI::App app{"crystal energies of homogeneously deformed lattice regions"};
  app.name("latsurf");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration file")
        ->required();
    sub->add_option("--epsilon", o.epsilon_override,
                    "override the config tail tolerance")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* c_count = app.add_subcommand(
      "count", "lattice points, area and remainder of the region");
  add_common(c_count);
  c_count->add_option("--scale", o.scale, "dilation factor (default 1)")
      ->check(CLI::PositiveNumber);

  CLI::App* c_bonds = app.add_subcommand(
      "bonds", "bonds x -> x + w with both ends in the region");
  add_common(c_bonds);
  c_bonds->add_option("--w", o.bond, "bond vector, e.g. 1,-2")->required();

  CLI::App* c_energy =
      app.add_subcommand("energy", "crystal energy of the region");
  add_common(c_energy);
  c_energy->add_option("--mode", o.mode, "exact | brute | scaled")
      ->check(CLI::IsMember({"exact", "brute", "scaled"}));
  c_energy->add_option("--k", o.k, "dilation for --mode scaled (default 1)")
      ->check(CLI::PositiveNumber);

  CLI::App* c_gamma =
      app.add_subcommand("gamma", "surface energy density sweep (CSV)");
  add_common(c_gamma);
  c_gamma->add_option("--density", o.density, "circ | diamond | hat")
      ->check(CLI::IsMember({"circ", "diamond", "hat"}));
  c_gamma->add_option("--samples", o.samples, "angular samples (default 360)")
      ->check(CLI::PositiveNumber);
  c_gamma
      ->add_option("--max-miller", o.max_miller,
                   "largest |n| for lattice directions (default 10)")
      ->check(CLI::PositiveNumber);
  c_gamma->add_option("--out", o.out_path, "CSV output file (default stdout)");
  c_gamma->add_option("--svg", o.svg_path, "also plot to this SVG file");

  CLI::App* c_wulff =
      app.add_subcommand("wulff", "equilibrium crystal shape vertices");
  add_common(c_wulff);
  c_wulff
      ->add_option("--samples", o.wulff_samples,
                   "normal directions, >= 16 (default 64)")
      ->check(CLI::Range(16, 1000000));
  c_wulff->add_option("--density", o.density, "circ | hat")
      ->check(CLI::IsMember({"circ", "hat"}));
  c_wulff
      ->add_option("--max-miller", o.wulff_max_miller,
                   "largest |n| for --density hat (default 20)")
      ->check(CLI::PositiveNumber);
  c_wulff->add_option("--out", o.out_path, "CSV output file (default stdout)");
  c_wulff->add_option("--svg", o.svg_path, "also draw to this SVG file");

  CLI::App* c_study = app.add_subcommand(
      "study", "scaling studies: counts and energy decompositions");
  add_common(c_study);
  c_study->add_option("--kind", o.kind, "remainder | decomposition | slope")
      ->required()
      ->check(CLI::IsMember({"remainder", "decomposition", "slope"}));
  c_study->add_option("--scales", o.scales, "comma-separated scales, e.g. 4,8,16")
      ->required();
  c_study->add_option("--out", o.out_path, "CSV output file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("latsurf");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config(o.config);
  } catch (const ConfigError& ce) {
    err << "config errors in '" << o.config << "':\n";
    for (const std::string& item : ce.items()) err << "  - " << item << "\n";
    return 2;
  }
  for (const std::string& w : cfg.warnings) err << "warning: " << w << "\n";
  if (o.epsilon_override > 0) cfg.epsilon = o.epsilon_override;

  try {
    if (app.got_subcommand(c_count)) return run_count(cfg, o, out, err);
    if (app.got_subcommand(c_bonds)) return run_bonds(cfg, o, out, err);
    if (app.got_subcommand(c_energy)) return run_energy(cfg, o, out, err);
    if (app.got_subcommand(c_gamma)) return run_gamma(cfg, o, out, err);
    if (app.got_subcommand(c_wulff)) return run_wulff(cfg, o, out, err);
    if (app.got_subcommand(c_study)) return run_study(cfg, o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand selected\n";
  return 2;
}

}  // namespace latsurf::cli
