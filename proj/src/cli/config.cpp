#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latsurf/cli.hpp"

namespace latsurf::cli {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> items)
    : std::runtime_error(items.empty() ? "invalid config"
                                       : "invalid config: " + items.front()),
      items_(std::move(items)) {}

namespace {

struct Ctx {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  void fail(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }
};

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed, Ctx& ctx) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) ctx.fail(path, "unknown key '" + key + "'");
  }
}

bool want_object(const json& j, const std::string& path, Ctx& ctx) {
  if (j.is_object()) return true;
  ctx.fail(path, "expected an object");
  return false;
}

std::optional<i64> parse_int(const json& j, const std::string& path, Ctx& ctx) {
  if (j.is_number_integer()) return j.get<i64>();
  ctx.fail(path, "expected an integer");
  return std::nullopt;
}

std::optional<double> parse_number(const json& j, const std::string& path,
                                   Ctx& ctx) {
  if (j.is_number()) return j.get<double>();
  ctx.fail(path, "expected a number");
  return std::nullopt;
}

std::optional<Vec2i> parse_vec2i(const json& j, const std::string& path,
                                 Ctx& ctx) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    ctx.fail(path, "expected a pair of integers [x, y]");
    return std::nullopt;
  }
  return Vec2i{j[0].get<i64>(), j[1].get<i64>()};
}

// Exact rational input: either a JSON number (converted exactly when it is a
// dyadic/simple rational; otherwise approximated with a warning) or a string
// "p/q".
std::optional<Rat> parse_rational(const json& j, const std::string& path,
                                  Ctx& ctx) {
  if (j.is_number_integer()) return Rat(j.get<i64>());
  if (j.is_number()) {
    double v = j.get<double>();
    try {
      Rat r = rationalize(v);
      if (r.to_double() != v)
        ctx.warnings.push_back(path + ": value approximated by the rational " +
                               r.str());
      return r;
    } catch (const std::exception& e) {
      ctx.fail(path, e.what());
      return std::nullopt;
    }
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(std::stoll(s));
      long long num = std::stoll(s.substr(0, slash));
      long long den = std::stoll(s.substr(slash + 1));
      if (den == 0) throw std::domain_error("zero denominator");
      return Rat((i128)num, (i128)den);
    } catch (const std::exception&) {
      ctx.fail(path, "expected a rational like \"7/2\", got '" + s + "'");
      return std::nullopt;
    }
  }
  ctx.fail(path, "expected a number or a \"p/q\" string");
  return std::nullopt;
}

std::optional<RatPoint> parse_rat_point(const json& j, const std::string& path,
                                        Ctx& ctx) {
  if (!j.is_array() || j.size() != 2) {
    ctx.fail(path, "expected a pair [x, y]");
    return std::nullopt;
  }
  auto x = parse_rational(j[0], path + "[0]", ctx);
  auto y = parse_rational(j[1], path + "[1]", ctx);
  if (!x || !y) return std::nullopt;
  return RatPoint{*x, *y};
}

std::optional<std::vector<RationalHalfPlane>> parse_halfplanes(
    const json& j, const std::string& path, Ctx& ctx) {
  if (!j.is_array()) {
    ctx.fail(path, "expected an array of half-planes");
    return std::nullopt;
  }
  std::vector<RationalHalfPlane> planes;
  bool ok = true;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!want_object(j[i], p, ctx)) {
      ok = false;
      continue;
    }
    check_keys(j[i], p, {"normal", "offset"}, ctx);
    if (!j[i].contains("normal") || !j[i].contains("offset")) {
      ctx.fail(p, "needs 'normal' and 'offset'");
      ok = false;
      continue;
    }
    auto n = parse_vec2i(j[i]["normal"], p + ".normal", ctx);
    auto c = parse_rational(j[i]["offset"], p + ".offset", ctx);
    if (!n || !c) {
      ok = false;
      continue;
    }
    planes.push_back({*n, *c});
  }
  if (!ok) return std::nullopt;
  return planes;
}

// Radius-style input: accept "radius" (exact rational, squared exactly) or
// "radius_sq", but not both.
std::optional<Rat> parse_squared_length(const json& j, const std::string& path,
                                        const std::string& plain,
                                        const std::string& squared, Ctx& ctx) {
  bool has_plain = j.contains(plain);
  bool has_sq = j.contains(squared);
  if (has_plain == has_sq) {
    ctx.fail(path, "give exactly one of '" + plain + "' or '" + squared + "'");
    return std::nullopt;
  }
  if (has_plain) {
    auto r = parse_rational(j[plain], path + "." + plain, ctx);
    if (!r) return std::nullopt;
    return *r * *r;
  }
  return parse_rational(j[squared], path + "." + squared, ctx);
}

std::optional<ConvexRegion> parse_region(const json& j, Ctx& ctx) {
  const std::string path = "region";
  if (!want_object(j, path, ctx)) return std::nullopt;
  if (!j.contains("type")) {
    ctx.fail(path, "missing 'type'");
    return std::nullopt;
  }
  std::string type = j["type"].is_string() ? j["type"].get<std::string>() : "";

  try {
    if (type == "lattice_polygon") {
      check_keys(j, path, {"type", "vertices"}, ctx);
      if (!j.contains("vertices") || !j["vertices"].is_array()) {
        ctx.fail(path, "needs a 'vertices' array");
        return std::nullopt;
      }
      std::vector<Vec2i> verts;
      for (size_t i = 0; i < j["vertices"].size(); ++i) {
        auto v = parse_vec2i(j["vertices"][i],
                             path + ".vertices[" + std::to_string(i) + "]", ctx);
        if (!v) return std::nullopt;
        verts.push_back(*v);
      }
      return ConvexRegion{ConvexLatticePolygon(std::move(verts))};
    }
    if (type == "half_planes") {
      check_keys(j, path, {"type", "planes"}, ctx);
      if (!j.contains("planes")) {
        ctx.fail(path, "needs a 'planes' array");
        return std::nullopt;
      }
      auto planes = parse_halfplanes(j["planes"], path + ".planes", ctx);
      if (!planes) return std::nullopt;
      return ConvexRegion{RationalPolygon(std::move(*planes))};
    }
    if (type == "disk") {
      check_keys(j, path, {"type", "center", "radius", "radius_sq"}, ctx);
      RatPoint center{Rat(0), Rat(0)};
      if (j.contains("center")) {
        auto c = parse_rat_point(j["center"], path + ".center", ctx);
        if (!c) return std::nullopt;
        center = *c;
      }
      auto r2 = parse_squared_length(j, path, "radius", "radius_sq", ctx);
      if (!r2) return std::nullopt;
      return ConvexRegion{Disk(center, *r2)};
    }
    if (type == "ellipse") {
      check_keys(j, path,
                 {"type", "center", "semi_x", "semi_x_sq", "semi_y",
                  "semi_y_sq"},
                 ctx);
      RatPoint center{Rat(0), Rat(0)};
      if (j.contains("center")) {
        auto c = parse_rat_point(j["center"], path + ".center", ctx);
        if (!c) return std::nullopt;
        center = *c;
      }
      auto a2 = parse_squared_length(j, path, "semi_x", "semi_x_sq", ctx);
      auto b2 = parse_squared_length(j, path, "semi_y", "semi_y_sq", ctx);
      if (!a2 || !b2) return std::nullopt;
      return ConvexRegion{Ellipse(center, *a2, *b2)};
    }
    if (type == "mixed") {
      check_keys(j, path, {"type", "center", "radius", "radius_sq", "chords"},
                 ctx);
      RatPoint center{Rat(0), Rat(0)};
      if (j.contains("center")) {
        auto c = parse_rat_point(j["center"], path + ".center", ctx);
        if (!c) return std::nullopt;
        center = *c;
      }
      auto r2 = parse_squared_length(j, path, "radius", "radius_sq", ctx);
      if (!r2) return std::nullopt;
      if (!j.contains("chords")) {
        ctx.fail(path, "needs a 'chords' array");
        return std::nullopt;
      }
      auto chords = parse_halfplanes(j["chords"], path + ".chords", ctx);
      if (!chords) return std::nullopt;
      return ConvexRegion{MixedRegion(center, *r2, std::move(*chords))};
    }
  } catch (const std::exception& e) {
    ctx.fail(path, e.what());
    return std::nullopt;
  }
  ctx.fail(path, "unknown type '" + type +
                     "' (expected lattice_polygon, half_planes, disk, "
                     "ellipse or mixed)");
  return std::nullopt;
}

std::optional<RadialTerm> parse_term(const json& j, const std::string& path,
                                     bool allow_constant, Ctx& ctx) {
  std::string form =
      j.contains("form") && j["form"].is_string() ? j["form"].get<std::string>()
                                                  : "";
  if (j.contains("value")) {
    if (!allow_constant) {
      ctx.fail(path, "a constant term needs a finite table");
      return std::nullopt;
    }
    auto v = parse_number(j["value"], path + ".value", ctx);
    if (!v) return std::nullopt;
    return RadialTerm{ConstantTerm{*v}};
  }
  if (form == "inverse_power") {
    auto a = j.contains("amplitude")
                 ? parse_number(j["amplitude"], path + ".amplitude", ctx)
                 : (ctx.fail(path, "inverse_power needs 'amplitude'"),
                    std::optional<double>{});
    auto e = j.contains("exponent")
                 ? parse_number(j["exponent"], path + ".exponent", ctx)
                 : (ctx.fail(path, "inverse_power needs 'exponent'"),
                    std::optional<double>{});
    if (!a || !e) return std::nullopt;
    return RadialTerm{InversePowerTerm{*a, *e}};
  }
  if (form == "lennard_jones") {
    double depth = 1, minimum = 1;
    if (j.contains("well_depth")) {
      auto d = parse_number(j["well_depth"], path + ".well_depth", ctx);
      if (!d) return std::nullopt;
      depth = *d;
    }
    if (j.contains("minimum")) {
      auto m = parse_number(j["minimum"], path + ".minimum", ctx);
      if (!m) return std::nullopt;
      minimum = *m;
    }
    return RadialTerm{LennardJonesTerm{depth, minimum}};
  }
  ctx.fail(path, "needs 'value' or form inverse_power / lennard_jones");
  return std::nullopt;
}

std::optional<Potential> parse_potential(const json& j, Ctx& ctx) {
  const std::string path = "potential";
  if (!want_object(j, path, ctx)) return std::nullopt;
  if (!j.contains("type")) {
    ctx.fail(path, "missing 'type'");
    return std::nullopt;
  }
  std::string type = j["type"].is_string() ? j["type"].get<std::string>() : "";

  try {
    if (type == "finite_table") {
      check_keys(j, path, {"type", "bonds", "symmetrize"}, ctx);
      bool symmetrize = false;
      if (j.contains("symmetrize")) {
        if (!j["symmetrize"].is_boolean()) {
          ctx.fail(path + ".symmetrize", "expected true or false");
          return std::nullopt;
        }
        symmetrize = j["symmetrize"].get<bool>();
      }
      if (!j.contains("bonds") || !j["bonds"].is_array() || j["bonds"].empty()) {
        ctx.fail(path, "needs a non-empty 'bonds' array");
        return std::nullopt;
      }
      std::vector<TableEntry> entries;
      for (size_t i = 0; i < j["bonds"].size(); ++i) {
        std::string p = path + ".bonds[" + std::to_string(i) + "]";
        const json& je = j["bonds"][i];
        if (!want_object(je, p, ctx)) return std::nullopt;
        check_keys(je, p,
                   {"w", "value", "form", "amplitude", "exponent", "well_depth",
                    "minimum"},
                   ctx);
        if (!je.contains("w")) {
          ctx.fail(p, "needs 'w'");
          return std::nullopt;
        }
        auto w = parse_vec2i(je["w"], p + ".w", ctx);
        auto term = parse_term(je, p, /*allow_constant=*/true, ctx);
        if (!w || !term) return std::nullopt;
        entries.push_back({*w, *term});
      }
      return Potential{FiniteTable(std::move(entries), symmetrize)};
    }
    if (type == "lennard_jones" || type == "inverse_power") {
      check_keys(j, path,
                 {"type", "amplitude", "exponent", "well_depth", "minimum"},
                 ctx);
      json term = j;
      term.erase("type");
      if (type == "inverse_power") term["form"] = "inverse_power";
      if (type == "lennard_jones") term["form"] = "lennard_jones";
      auto t = parse_term(term, path, /*allow_constant=*/false, ctx);
      if (!t) return std::nullopt;
      return Potential{RadialPotential(*t)};
    }
  } catch (const std::exception& e) {
    ctx.fail(path, e.what());
    return std::nullopt;
  }
  ctx.fail(path, "unknown type '" + type +
                     "' (expected finite_table, lennard_jones or "
                     "inverse_power)");
  return std::nullopt;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }

  Ctx ctx;
  RunConfig cfg;
  if (!j.is_object()) {
    throw ConfigError({"config: top level must be an object"});
  }
  check_keys(j, "config",
             {"version", "region", "potential", "F", "epsilon", "seed"}, ctx);

  if (!j.contains("version")) {
    ctx.fail("config", "missing required key 'version'");
  } else if (auto v = parse_int(j["version"], "version", ctx);
             v && *v != 1) {
    ctx.fail("version", "unsupported schema version " + std::to_string(*v) +
                            " (this tool reads version 1)");
  }

  if (j.contains("region")) cfg.region = parse_region(j["region"], ctx);
  if (j.contains("potential"))
    cfg.potential = parse_potential(j["potential"], ctx);

  if (j.contains("F")) {
    const json& f = j["F"];
    if (!f.is_array() || f.size() != 4 || !f[0].is_number() ||
        !f[1].is_number() || !f[2].is_number() || !f[3].is_number()) {
      ctx.fail("F", "expected four numbers [xx, xy, yx, yy] in row-major order");
    } else {
      double xx = f[0].get<double>(), xy = f[1].get<double>();
      double yx = f[2].get<double>(), yy = f[3].get<double>();
      double det = xx * yy - xy * yx;
      if (!(det > 0)) {
        ctx.fail("F", "determinant must be positive, got det = " + fmt12(det));
      } else {
        cfg.F = DeformationGradient(xx, xy, yx, yy);
      }
    }
  }

  if (j.contains("epsilon")) {
    auto e = parse_number(j["epsilon"], "epsilon", ctx);
    if (e) {
      if (!(*e > 0))
        ctx.fail("epsilon", "must be positive");
      else
        cfg.epsilon = *e;
    }
  }
  if (j.contains("seed")) {
    auto s = parse_int(j["seed"], "seed", ctx);
    if (s) cfg.seed = *s;
  }

  if (!ctx.errors.empty()) throw ConfigError(std::move(ctx.errors));
  cfg.warnings = std::move(ctx.warnings);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace latsurf::cli
