#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ksv/config.hpp"
#include "ksv/errors.hpp"

namespace ksv {

using json = nlohmann::json;

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::Exact: return "exact";
    case RunMode::Thin: return "thin";
    case RunMode::Circular: return "circular";
    case RunMode::All: return "all";
  }
  return "all";
}

RunMode parse_run_mode(const std::string& text) {
  if (text == "exact") return RunMode::Exact;
  if (text == "thin") return RunMode::Thin;
  if (text == "circular") return RunMode::Circular;
  if (text == "all") return RunMode::All;
  throw ValidationError("mode", "mode must be one of exact, thin, circular, all (got '" + text + "')");
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  void allow(const json& obj, const std::string& where, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) throw ValidationError(where, "'" + where + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) {
        const std::string name = where.empty() ? it.key() : where + "." + it.key();
        const int line = line_of_key(text_, it.key());
        throw ParseError("unknown key '" + name + "'" + (line ? " at line " + std::to_string(line) : ""),
                         it.key(), line);
      }
    }
  }

  static double number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ValidationError(field, "'" + field + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(field, "'" + field + "' must be finite");
    return x;
  }

  static std::size_t count(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ValidationError(field, "'" + field + "' must be a non-negative integer");
    return v.get<std::size_t>();
  }

  static std::string str(const json& v, const std::string& field) {
    if (!v.is_string()) throw ValidationError(field, "'" + field + "' must be a string");
    return v.get<std::string>();
  }

  static Vec3 vec3(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3) throw ValidationError(field, "'" + field + "' must be a 3-vector");
    return {number(v[0], field), number(v[1], field), number(v[2], field)};
  }

  static Vec2 vec2(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) throw ValidationError(field, "'" + field + "' must be a 2-vector");
    return {number(v[0], field), number(v[1], field)};
  }

 private:
  const std::string& text_;
};

// Harmonic table {"k": [a_cos, a_sin], ...}.
void read_harmonics(const json& table, const std::string& field, std::vector<double>& cos_c,
                    std::vector<double>& sin_c) {
  if (!table.is_object() || table.empty())
    throw ValidationError(field, "'" + field + "' must map harmonic indices to [a_cos, a_sin]");
  for (auto it = table.begin(); it != table.end(); ++it) {
    std::size_t k = 0;
    std::size_t used = 0;
    try {
      k = std::stoul(it.key(), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it.key().size() || k > 4096)
      throw ValidationError(field, "harmonic index '" + it.key() + "' in '" + field + "' is not an integer");
    const Vec2 pair = Reader::vec2(it.value(), field + "." + it.key());
    if (cos_c.size() <= k) {
      cos_c.resize(k + 1, 0.0);
      sin_c.resize(k + 1, 0.0);
    }
    cos_c[k] = pair[0];
    sin_c[k] = pair[1];
  }
}

bool is_canonical_circle(const FourierCurveSpec& s, double& radius) {
  auto at = [](const std::vector<double>& v, std::size_t k) { return k < v.size() ? v[k] : 0.0; };
  if (s.order() != 1) return false;
  const double r = at(s.x1_cos, 1);
  if (!(r > 0.0) || at(s.x2_sin, 1) != r || at(s.x1_sin, 1) != 0.0 || at(s.x2_cos, 1) != 0.0) return false;
  radius = r;
  return true;
}

SectionConfig read_section(const Reader& rd, const json& v) {
  SectionConfig out;
  if (v.is_string()) {
    out.label = v.get<std::string>();
    out.spec = parse_builtin_section(out.label);
  } else {
    rd.allow(v, "section", {"type", "radius", "a", "b", "center", "x1", "x2"});
    if (!v.contains("type")) throw ValidationError("section.type", "section needs a 'type'");
    const std::string type = Reader::str(v["type"], "section.type");
    if (type == "circle") {
      rd.allow(v, "section", {"type", "radius", "center"});
      if (!v.contains("radius")) throw ValidationError("section.radius", "circle needs a 'radius'");
      const double r = Reader::number(v["radius"], "section.radius");
      if (!(r > 0.0)) throw ValidationError("section.radius", "circle radius must be positive");
      out.spec = FourierCurveSpec::circle(r);
    } else if (type == "ellipse") {
      rd.allow(v, "section", {"type", "a", "b", "center"});
      if (!v.contains("a") || !v.contains("b")) throw ValidationError("section.a", "ellipse needs 'a' and 'b'");
      const double a = Reader::number(v["a"], "section.a");
      const double b = Reader::number(v["b"], "section.b");
      if (!(a > 0.0 && b > 0.0)) throw ValidationError("section.a", "ellipse semi-axes must be positive");
      out.spec = FourierCurveSpec::ellipse(a, b);
    } else if (type == "fourier") {
      rd.allow(v, "section", {"type", "x1", "x2"});
      if (!v.contains("x1") || !v.contains("x2"))
        throw ValidationError("section.x1", "fourier section needs 'x1' and 'x2' tables");
      read_harmonics(v["x1"], "section.x1", out.spec.x1_cos, out.spec.x1_sin);
      read_harmonics(v["x2"], "section.x2", out.spec.x2_cos, out.spec.x2_sin);
      const std::size_t n = std::max(out.spec.x1_cos.size(), out.spec.x2_cos.size());
      for (auto* c : {&out.spec.x1_cos, &out.spec.x1_sin, &out.spec.x2_cos, &out.spec.x2_sin}) c->resize(n, 0.0);
    } else {
      throw ValidationError("section.type", "section type must be circle, ellipse or fourier");
    }
    if (v.contains("center")) out.spec = out.spec.translated(Reader::vec2(v["center"], "section.center"));
    if (out.label.empty()) out.label = type;
  }
  out.circle = is_canonical_circle(out.spec, out.radius);
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed config at line " + std::to_string(line) + ": " + e.what(), {}, line);
  }
  const Reader rd(text);
  rd.allow(doc, "", {"section", "material", "length", "loads", "mode", "grid", "psi_variant", "output", "gates"});

  RunConfig cfg;
  if (!doc.contains("section")) throw ValidationError("section", "config needs a 'section'");
  cfg.section = read_section(rd, doc["section"]);

  if (!doc.contains("material")) throw ValidationError("material", "config needs a 'material'");
  const json& m = doc["material"];
  rd.allow(m, "material", {"E", "nu", "h"});
  for (const char* k : {"E", "nu", "h"})
    if (!m.contains(k)) throw ValidationError(k, std::string("material needs '") + k + "'");
  cfg.E = Reader::number(m["E"], "E");
  cfg.nu = Reader::number(m["nu"], "nu");
  cfg.h = Reader::number(m["h"], "h");

  if (doc.contains("length")) cfg.length = Reader::number(doc["length"], "length");

  if (doc.contains("loads")) {
    const json& l = doc["loads"];
    rd.allow(l, "loads", {"R", "M", "origin"});
    if (l.contains("R")) cfg.loads.force = Reader::vec3(l["R"], "loads.R");
    if (l.contains("M")) cfg.loads.moment = Reader::vec3(l["M"], "loads.M");
    if (l.contains("origin")) {
      const std::string o = Reader::str(l["origin"], "loads.origin");
      if (o == "centroid") cfg.origin = LoadOrigin::Centroid;
      else if (o == "user") cfg.origin = LoadOrigin::User;
      else throw ValidationError("loads.origin", "origin must be 'centroid' or 'user'");
    }
  }

  if (doc.contains("mode")) cfg.mode = parse_run_mode(Reader::str(doc["mode"], "mode"));

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    rd.allow(g, "grid", {"s", "z"});
    if (g.contains("s")) cfg.grid_s = Reader::count(g["s"], "grid.s");
    if (g.contains("z")) cfg.grid_z = Reader::count(g["z"], "grid.z");
  }

  if (doc.contains("psi_variant")) cfg.psi_variant = parse_psi_variant(Reader::str(doc["psi_variant"], "psi_variant"));

  if (doc.contains("output")) {
    const json& o = doc["output"];
    rd.allow(o, "output", {"dir", "formats"});
    if (o.contains("dir")) cfg.output.dir = Reader::str(o["dir"], "output.dir");
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) throw ValidationError("output.formats", "formats must be a list");
      cfg.output.csv = cfg.output.json = false;
      for (const auto& f : o["formats"]) {
        const std::string name = Reader::str(f, "output.formats");
        if (name == "csv") cfg.output.csv = true;
        else if (name == "json") cfg.output.json = true;
        else throw ValidationError("output.formats", "unknown output format '" + name + "'");
      }
    }
  }

  if (doc.contains("gates")) {
    const json& g = doc["gates"];
    rd.allow(g, "gates", {"equilibrium", "resultants", "seams"});
    if (g.contains("equilibrium")) cfg.gates.equilibrium = Reader::number(g["equilibrium"], "gates.equilibrium");
    if (g.contains("resultants")) cfg.gates.resultants = Reader::number(g["resultants"], "gates.resultants");
    if (g.contains("seams")) cfg.gates.seams = Reader::number(g["seams"], "gates.seams");
  }

  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& cfg) {
  try {
    stiffnesses(cfg.E, cfg.nu, cfg.h);
  } catch (const InvalidMaterial& e) {
    throw ValidationError(e.field(), e.what());
  }
  if (!(cfg.length > 0.0) || !std::isfinite(cfg.length))
    throw ValidationError("length", "tube length must be positive");
  if (cfg.grid_s < 64 || cfg.grid_s % 2 != 0)
    throw ValidationError("grid.s", "grid.s must be even and at least 64 (got " + std::to_string(cfg.grid_s) + ")");
  if (cfg.grid_z < 2) throw ValidationError("grid.z", "grid.z must be at least 2");
  if (cfg.mode == RunMode::Circular && !cfg.section.circle)
    throw ValidationError("mode", "circular mode requires a circle section");
  for (double g : {cfg.gates.equilibrium, cfg.gates.resultants, cfg.gates.seams})
    if (!(g > 0.0)) throw ValidationError("gates", "gates must be positive");
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(cfg.loads.force[i]) || !std::isfinite(cfg.loads.moment[i]))
      throw ValidationError("loads", "loads must be finite");
  }
  if (cfg.output.dir.empty()) throw ValidationError("output.dir", "output directory must not be empty");
}

ResultantLoads transform_loads_to_centroid(const ResultantLoads& loads, const Vec2& centroid) {
  const Vec3 c(centroid[0], centroid[1], 0.0);
  return {loads.force, loads.moment - c.cross(loads.force)};
}

ResultantLoads transform_loads_to_user(const ResultantLoads& loads, const Vec2& centroid) {
  const Vec3 c(centroid[0], centroid[1], 0.0);
  return {loads.force, loads.moment + c.cross(loads.force)};
}

}  // namespace ksv
