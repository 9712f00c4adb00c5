#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/QR>

#include "json.hpp"

#include "ksv/config.hpp"
#include "ksv/errors.hpp"
#include "ksv/flexure.hpp"
#include "ksv/linalg.hpp"
#include "ksv/thin.hpp"

namespace ksv {

using ojson = nlohmann::ordered_json;

namespace {

// nlohmann's float output is shortest round-trip; the summary wants a fixed
// 17 significant digits, so numbers are rendered here.
std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_flat(const ojson& j) {
  return std::all_of(j.begin(), j.end(), [](const ojson& v) { return v.is_primitive(); });
}

void emit(std::string& out, const ojson& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + ojson(it.key()).dump() + ": ";
      emit(out, it.value(), depth + 1);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty() || is_flat(j)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        emit(out, j[i], depth + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      emit(out, j[i], depth + 1);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else {
    out += j.dump();
  }
}

std::string render(const ojson& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

ojson vec(const Vec3& v) { return ojson::array({v[0], v[1], v[2]}); }
ojson vec(const Vec2& v) { return ojson::array({v[0], v[1]}); }
template <std::size_t N>
ojson vec(const std::array<double, N>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x);
  return a;
}
ojson matrix(const Mat3& m) { return ojson::array({vec(Vec3(m.row(0))), vec(Vec3(m.row(1))), vec(Vec3(m.row(2)))}); }
ojson matrix(const Mat2& m) { return ojson::array({vec(Vec2(m.row(0))), vec(Vec2(m.row(1)))}); }

ojson loads_json(const ResultantLoads& l) { return {{"R", vec(l.force)}, {"M", vec(l.moment)}}; }
ojson resultants_json(const Resultants& r) { return {{"R", vec(r.force)}, {"M", vec(r.moment)}}; }

double max_abs(const std::array<double, 3>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

ojson report_json(const ResidualReport& r, const Vec2& centroid) {
  ojson j;
  j["grid_s"] = r.grid_s;
  ojson zs = ojson::array();
  for (double z : r.z_stations) zs.push_back(z);
  j["z_stations"] = zs;
  j["equilibrium"] = {{"max", vec(r.equilibrium.max)},
                      {"l2", vec(r.equilibrium.l2)},
                      {"stress_scale", r.equilibrium.stress_scale},
                      {"relative", r.equilibrium.relative}};
  const ResultantLoads user = transform_loads_to_user({r.resultants.force, r.resultants.moment}, centroid);
  j["resultants"] = {{"centroid", resultants_json(r.resultants)},
                     {"user_origin", loads_json(user)},
                     {"relative", r.resultant_relative}};
  if (r.has_seams) {
    j["seams"] = {{"absolute", vec(r.seams.absolute)}, {"relative", vec(r.seams.relative)}};
  } else {
    j["seams"] = nullptr;
  }
  j["balance"] = {{"start", resultants_json(r.balance.start)},
                  {"end", resultants_json(r.balance.end)},
                  {"relative", r.balance.relative}};
  j["strain_diagnostic"] = {{"max_metric", r.strain.max_metric},
                            {"h_max_curvature", r.strain.h_max_curvature},
                            {"ratio", r.strain.ratio}};
  return j;
}

struct GateLog {
  std::vector<std::string> failed;
  ojson checks = ojson::array();

  void check(const std::string& name, double value, double gate) {
    const bool pass = std::isfinite(value) && value <= gate;
    checks.push_back({{"name", name}, {"value", value}, {"gate", gate}, {"pass", pass}});
    if (!pass) failed.push_back(name);
  }
};

void gate_report(GateLog& log, const std::string& tag, const ResidualReport& r, const Gates& g) {
  log.check(tag + ".equilibrium", r.equilibrium.relative, g.equilibrium);
  log.check(tag + ".resultants", r.resultant_relative, g.resultants);
  log.check(tag + ".balance", r.balance.relative, g.resultants);
  if (r.has_seams) log.check(tag + ".seams", max_abs(r.seams.relative), g.seams);
}

StressState add(StressState a, const StressState& b) {
  a.N_ss += b.N_ss; a.N_sz += b.N_sz; a.N_zz += b.N_zz;
  a.M_ss += b.M_ss; a.M_sz += b.M_sz; a.M_zz += b.M_zz;
  a.P_ss += b.P_ss; a.P_sz += b.P_sz; a.P_zs += b.P_zs; a.P_zz += b.P_zz;
  a.S_s += b.S_s; a.S_z += b.S_z;
  return a;
}

using StressAt = std::function<std::vector<StressState>(double)>;

std::vector<TableRow> tabulate(const SectionCurve& curve, const FieldEvaluator& field, const StressAt& stress,
                               const std::vector<double>& zs) {
  std::vector<TableRow> rows;
  rows.reserve(curve.size() * zs.size());
  for (double z : zs) {
    const VecSamples u = field.sample(z);
    const std::vector<StressState> st = stress(z);
    for (std::size_t j = 0; j < curve.size(); ++j) rows.push_back({curve.grid().node(j), z, u[j], st[j]});
  }
  return rows;
}

// Displacement at arbitrary (s, z), for gap measurements off the solver grid.
using PointField = std::function<Vec3(double, double)>;

struct Gap {
  double max_abs = 0.0;
  double max_abs_modulo_rigid = 0.0;
  double reference_scale = 0.0;
};

// Max |a - b| on an n_s x n_z evaluation grid, raw and after removing the
// least-squares rigid motion c + d x r from the difference.
Gap field_gap(const SectionCurve& curve, const PointField& a, const PointField& b, double length,
              std::size_t n_s = 64, std::size_t n_z = 8) {
  const double period = curve.perimeter();
  const auto zs = stations(length, n_z);
  const std::size_t rows = 3 * n_s * zs.size();
  Eigen::MatrixXd G(rows, 6);
  Eigen::VectorXd d(rows);
  Gap gap;
  std::size_t r = 0;
  for (double z : zs) {
    for (std::size_t k = 0; k < n_s; ++k) {
      const double s = period * static_cast<double>(k) / static_cast<double>(n_s);
      const Vec3 ua = a(s, z);
      const Vec3 diff = ua - b(s, z);
      gap.max_abs = std::max(gap.max_abs, diff.cwiseAbs().maxCoeff());
      gap.reference_scale = std::max(gap.reference_scale, ua.cwiseAbs().maxCoeff());
      const Vec3 x(curve.grid().interpolate(curve.x1(), s), curve.grid().interpolate(curve.x2(), s), z);
      // d x r = -r x d, written as rows of the skew matrix
      Mat3 skew;
      skew << 0.0, x[2], -x[1], -x[2], 0.0, x[0], x[1], -x[0], 0.0;
      for (int i = 0; i < 3; ++i, ++r) {
        G.row(r).setZero();
        G(r, i) = 1.0;
        G.row(r).tail<3>() = skew.row(i);
        d[r] = diff[i];
      }
    }
  }
  const Eigen::VectorXd p = G.colPivHouseholderQr().solve(d);
  gap.max_abs_modulo_rigid = (d - G * p).cwiseAbs().maxCoeff();
  return gap;
}

ojson gap_json(const Gap& g) {
  const double rel = g.reference_scale > 0.0 ? g.max_abs / g.reference_scale : g.max_abs;
  const double rel_rigid = g.reference_scale > 0.0 ? g.max_abs_modulo_rigid / g.reference_scale : g.max_abs_modulo_rigid;
  return {{"max_abs", g.max_abs},
          {"max_abs_modulo_rigid", g.max_abs_modulo_rigid},
          {"reference_scale", g.reference_scale},
          {"relative", rel},
          {"relative_modulo_rigid", rel_rigid}};
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

double rel_diff(const Vec3& a, const Vec3& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : 0.0;
}

struct Coefficients {
  Vec3 A = Vec3::Zero(), B = Vec3::Zero(), A_hat = Vec3::Zero(), B_hat = Vec3::Zero();
  double A3_bar = 0.0, K = 0.0, K_tilde = 0.0, K0 = 0.0;
};

ojson coefficients_json(const Coefficients& c) {
  return {{"A", vec(c.A)},     {"A3_bar", c.A3_bar}, {"B", vec(c.B)},         {"K", c.K},
          {"A_hat", vec(c.A_hat)}, {"B_hat", vec(c.B_hat)}, {"K_tilde", c.K_tilde}, {"K0", c.K0}};
}

ojson coefficient_gap(const Coefficients& a, const Coefficients& b) {
  return {{"A", rel_diff(a.A, b.A)},         {"A3_bar", rel_diff(a.A3_bar, b.A3_bar)},
          {"B", rel_diff(a.B, b.B)},         {"K", rel_diff(a.K, b.K)},
          {"A_hat", rel_diff(a.A_hat, b.A_hat)}, {"B_hat", rel_diff(a.B_hat, b.B_hat)},
          {"K_tilde_abs", std::abs(a.K_tilde - b.K_tilde)}, {"K0_abs", std::abs(a.K0 - b.K0)}};
}

ojson section_json(const SectionCurve& curve, const SectionConfig& sc) {
  const SectionProperties p = section_properties(curve);
  return {{"label", sc.label},
          {"circle", sc.circle},
          {"grid_s", curve.size()},
          {"perimeter", p.perimeter},
          {"area", p.area},
          {"centroid", vec(p.centroid)},
          {"inertia", matrix(p.inertia)},
          {"total_turning", p.total_turning}};
}

ojson material_json(const ShellMaterial& m) {
  return {{"E", m.E}, {"nu", m.nu}, {"h", m.h}, {"C", m.C}, {"D", m.D}, {"mu", m.mu}};
}

void write_text(const std::filesystem::path& path, const std::string& text, std::vector<std::string>& artifacts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("output.dir", "cannot write '" + path.string() + "'");
  out << text;
  artifacts.push_back(path.string());
}

void write_table_file(const std::filesystem::path& path, const std::vector<TableRow>& rows,
                      std::vector<std::string>& artifacts) {
  std::ostringstream ss;
  write_field_table(ss, rows);
  write_text(path, ss.str(), artifacts);
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw ValidationError("output.dir", "cannot create '" + dir + "': " + ec.message());
  return p;
}

struct Context {
  SectionCurve curve;
  ShellMaterial mat;
  ResultantLoads loads;  // centroid origin
  std::vector<double> zs;
};

Context make_context(const RunConfig& cfg) {
  validate_config(cfg);
  Context c{build_section(cfg.section.spec, cfg.grid_s), stiffnesses(cfg.E, cfg.nu, cfg.h), cfg.loads, {}};
  if (cfg.origin == LoadOrigin::User) c.loads = transform_loads_to_centroid(cfg.loads, c.curve.centroid_offset());
  c.zs = stations(cfg.length, cfg.grid_z);
  return c;
}

ojson config_json(const RunConfig& cfg) {
  return {{"mode", to_string(cfg.mode)},
          {"grid_s", cfg.grid_s},
          {"grid_z", cfg.grid_z},
          {"length", cfg.length},
          {"psi_variant", to_string(cfg.psi_variant)},
          {"load_origin", cfg.origin == LoadOrigin::User ? "user" : "centroid"}};
}

}  // namespace

void write_field_table(std::ostream& os, const std::vector<TableRow>& rows) {
  os << kFieldTableHeader << "\n";
  os << "s,z,u1,u2,u3,N_ss,N_sz,N_zz,M_ss,M_sz,M_zz,P_ss,P_sz,P_zs,P_zz,S_s,S_z\n";
  for (const TableRow& r : rows) {
    const StressState& t = r.stress;
    const double v[] = {r.s,    r.z,    r.u[0], r.u[1], r.u[2], t.N_ss, t.N_sz, t.N_zz, t.M_ss,
                        t.M_sz, t.M_zz, t.P_ss, t.P_sz, t.P_zs, t.P_zz, t.S_s,  t.S_z};
    for (std::size_t i = 0; i < std::size(v); ++i) os << (i ? "," : "") << format_double(v[i]);
    os << "\n";
  }
}

std::vector<TableRow> read_field_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kFieldTableHeader)
    throw ParseError("field table must start with '" + std::string(kFieldTableHeader) + "'", {}, 1);
  if (!std::getline(is, line) || line.rfind("s,z,u1,u2,u3,", 0) != 0)
    throw ParseError("field table column header missing", {}, 2);
  std::vector<TableRow> rows;
  int lineno = 2;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + cell + "' at line " + std::to_string(lineno), {}, lineno);
      }
    }
    if (v.size() != 17) throw ParseError("expected 17 columns at line " + std::to_string(lineno), {}, lineno);
    TableRow r;
    r.s = v[0];
    r.z = v[1];
    r.u = Vec3(v[2], v[3], v[4]);
    StressState& t = r.stress;
    t.N_ss = v[5]; t.N_sz = v[6]; t.N_zz = v[7];
    t.M_ss = v[8]; t.M_sz = v[9]; t.M_zz = v[10];
    t.P_ss = v[11]; t.P_sz = v[12]; t.P_zs = v[13]; t.P_zz = v[14];
    t.S_s = v[15]; t.S_z = v[16];
    rows.push_back(r);
  }
  return rows;
}

std::string section_summary(const RunConfig& cfg) {
  const SectionCurve curve = build_section(cfg.section.spec, cfg.grid_s);
  return render(section_json(curve, cfg.section));
}

RunResult run_case(const RunConfig& cfg) {
  const Context ctx = make_context(cfg);
  const SectionCurve& curve = ctx.curve;
  const ShellMaterial& mat = ctx.mat;
  const bool want_exact = cfg.mode == RunMode::Exact || cfg.mode == RunMode::All;
  const bool want_thin = cfg.mode == RunMode::Thin || cfg.mode == RunMode::All;
  const bool want_circ =
      cfg.mode == RunMode::Circular || (cfg.mode == RunMode::All && cfg.section.circle);

  RunResult result;
  GateLog gates;
  const std::filesystem::path dir = prepare_dir(cfg.output.dir);

  ojson summary;
  summary["format"] = "ksv-summary v1";
  summary["config"] = config_json(cfg);
  summary["material"] = material_json(mat);
  summary["section"] = section_json(curve, cfg.section);
  summary["loads"] = {{"input", loads_json(cfg.loads)}, {"centroid", loads_json(ctx.loads)}};
  summary["gates"] = {{"equilibrium", cfg.gates.equilibrium},
                      {"resultants", cfg.gates.resultants},
                      {"seams", cfg.gates.seams}};

  PointField exact_at, thin_at, circ_at;
  Coefficients exact_c, thin_c, circ_c;
  const Vec2 centroid = curve.centroid_offset();

  if (want_exact) {
    const ResultantLoads ebt_loads{Vec3(0.0, 0.0, ctx.loads.force[2]), ctx.loads.moment};
    const ResultantLoads flex_loads{Vec3(ctx.loads.force[0], ctx.loads.force[1], 0.0), Vec3::Zero()};
    const EBTSolution e = solve_ebt(curve, mat, ebt_loads);
    const FlexureSolution f = solve_flexure(curve, mat, flex_loads);
    auto field = std::make_shared<const AxialPolynomialField>(ebt_field(e) + flexure_field(f));
    const FieldEvaluator ev = as_evaluator(*field);
    const ResidualReport rep = verify_field(ev, field.get(), curve, mat, ctx.loads, cfg.length, ctx.zs);
    gate_report(gates, "exact", rep, cfg.gates);
    const std::vector<StressState> ebt_nodes = ebt_stress(e);
    const StressAt stress = [&](double z) {
      std::vector<StressState> s = flexure_stress(f, z);
      for (std::size_t j = 0; j < s.size(); ++j) s[j] = add(s[j], ebt_nodes[j]);
      return s;
    };
    if (cfg.output.csv) write_table_file(dir / "field_exact.csv", tabulate(curve, ev, stress, ctx.zs), result.artifacts);

    exact_c = {e.A, e.B, f.A_hat, f.B_hat, e.A3_bar(), e.K, f.K_tilde, f.K0};
    const ContinuityMatrices cm = continuity_matrices(curve, mat);
    summary["exact"] = {{"gated", true},
                        {"coefficients", coefficients_json(exact_c)},
                        {"coupling", matrix(e.coupling)},
                        {"condition", {{"continuity", equilibrated_condition(cm.mb)},
                                       {"resultant", equilibrated_condition(resultant_matrix(curve, mat, e.coupling))}}},
                        {"verification", report_json(rep, centroid)}};
    exact_at = [field](double s, double z) { return field->value(s, z); };
  }

  if (want_thin) {
    const ThinSolution t = thin_coefficients(curve, mat, ctx.loads);
    auto field = std::make_shared<const AxialPolynomialField>(thin_displacement_field(t));
    const FieldEvaluator ev = as_evaluator(*field);
    const ResidualReport rep = verify_field(ev, field.get(), curve, mat, ctx.loads, cfg.length, ctx.zs);
    const StressAt stress = [&](double z) { return thin_stress(t, z); };
    if (cfg.output.csv) write_table_file(dir / "field_thin.csv", tabulate(curve, ev, stress, ctx.zs), result.artifacts);
    thin_c = {t.A, t.B, t.A_hat, t.B_hat, t.A3_bar(), t.K, t.K_tilde, t.K0};
    summary["thin"] = {{"gated", false},
                       {"coefficients", coefficients_json(thin_c)},
                       {"verification", report_json(rep, centroid)}};
    thin_at = [field](double s, double z) { return field->value(s, z); };
  }

  if (want_circ) {
    const CircularCase c = circle_coefficients(cfg.section.radius, mat, ctx.loads);
    circ_c = {c.A, c.B, c.A_hat, c.B_hat, c.A3_bar, c.K, c.K_tilde, c.K0};
    ojson variants;
    double combined[2] = {0.0, 0.0};
    int idx = 0;
    for (PsiVariant v : {PsiVariant::Corollary, PsiVariant::FlexureFunction}) {
      const ResidualReport rep =
          verify_field(circle_evaluator(c, curve, v), nullptr, curve, mat, ctx.loads, cfg.length, ctx.zs);
      combined[idx] = rep.equilibrium.relative + rep.resultant_relative + rep.balance.relative;
      variants[to_string(v)] = {{"psi_coefficient", psi_coefficient(c, v)},
                                {"combined_residual", combined[idx]},
                                {"verification", report_json(rep, centroid)}};
      ++idx;
    }
    std::string winner = "tie";
    double ratio = 1.0;
    const double lo = std::min(combined[0], combined[1]);
    const double hi = std::max(combined[0], combined[1]);
    if (hi > 0.0 && (lo == 0.0 || hi / lo > 1.0 + 1e-9)) {
      winner = combined[0] < combined[1] ? "corollary" : "flexure-fn";
      ratio = lo > 0.0 ? hi / lo : INFINITY;
    }
    const FieldEvaluator ev = circle_evaluator(c, curve, cfg.psi_variant);
    const StressAt stress = [&](double z) { return derived_stresses(ev, curve, mat, z); };
    if (cfg.output.csv)
      write_table_file(dir / "field_circular.csv", tabulate(curve, ev, stress, ctx.zs), result.artifacts);
    summary["circular"] = {{"gated", false},
                           {"radius", c.R0},
                           {"coefficients", coefficients_json(circ_c)},
                           {"psi_variant_used", to_string(cfg.psi_variant)},
                           {"psi_variants", variants},
                           {"psi_winner", winner},
                           {"psi_residual_ratio", ratio}};
    const PsiVariant used = cfg.psi_variant;
    circ_at = [c, used](double s, double z) { return circle_displacement(c, s, z, used); };
  } else if (cfg.mode == RunMode::All) {
    summary["circular"] = {{"skipped", "section is not a circle"}};
  }

  ojson cmp = ojson::object();
  if (exact_at && circ_at) {
    cmp["exact_vs_circular"] = {{"coefficients", coefficient_gap(exact_c, circ_c)},
                                {"displacement", gap_json(field_gap(curve, exact_at, circ_at, cfg.length))}};
  }
  if (thin_at && circ_at) {
    cmp["thin_vs_circular"] = {{"coefficients", coefficient_gap(thin_c, circ_c)},
                               {"displacement", gap_json(field_gap(curve, thin_at, circ_at, cfg.length))}};
  }
  if (exact_at && thin_at) {
    cmp["exact_vs_thin"] = {{"coefficients", coefficient_gap(exact_c, thin_c)},
                            {"displacement", gap_json(field_gap(curve, exact_at, thin_at, cfg.length))}};
  }
  summary["comparisons"] = cmp;

  result.failed_gates = gates.failed;
  result.exit_status = gates.failed.empty() ? 0 : 1;
  ojson failed = ojson::array();
  for (const auto& f : gates.failed) failed.push_back(f);
  summary["status"] = {{"pass", gates.failed.empty()}, {"checks", gates.checks}, {"failed", failed}};
  result.summary = render(summary);
  if (cfg.output.json) write_text(dir / "summary.json", result.summary, result.artifacts);
  return result;
}

RunResult verify_table(const RunConfig& cfg, const std::string& table_path) {
  std::ifstream in(table_path);
  if (!in) throw ValidationError("table", "cannot open field table '" + table_path + "'");
  const std::vector<TableRow> rows = read_field_table(in);
  if (rows.empty()) throw ParseError("field table has no rows");

  std::vector<double> zs;
  for (const TableRow& r : rows)
    if (zs.empty() || r.z != zs.back()) zs.push_back(r.z);
  if (rows.size() % zs.size() != 0) throw GridMismatch("field table rows are not a full s x z grid");
  const std::size_t ns = rows.size() / zs.size();

  RunConfig local = cfg;
  local.grid_s = ns;
  local.grid_z = zs.size();
  validate_config(local);
  const SectionCurve curve = build_section(cfg.section.spec, ns);
  const ShellMaterial mat = stiffnesses(cfg.E, cfg.nu, cfg.h);
  ResultantLoads loads = cfg.loads;
  if (cfg.origin == LoadOrigin::User) loads = transform_loads_to_centroid(loads, curve.centroid_offset());

  const double tol = 1e-9 * curve.perimeter();
  for (std::size_t k = 0; k < zs.size(); ++k) {
    for (std::size_t j = 0; j < ns; ++j) {
      const TableRow& r = rows[k * ns + j];
      if (r.z != zs[k] || std::abs(r.s - curve.grid().node(j)) > tol)
        throw GridMismatch("field table row " + std::to_string(k * ns + j + 1) +
                           " does not lie on the section grid");
    }
  }

  // Least-squares polynomial in z, degree min(4, n_z - 1), at every node.
  const std::size_t deg = std::min<std::size_t>(4, zs.size() - 1);
  const double zscale = std::max(std::abs(zs.front()), std::abs(zs.back())) > 0.0
                            ? std::max(std::abs(zs.front()), std::abs(zs.back()))
                            : 1.0;
  Eigen::MatrixXd V(zs.size(), deg + 1);
  for (std::size_t k = 0; k < zs.size(); ++k)
    for (std::size_t m = 0; m <= deg; ++m) V(k, m) = std::pow(zs[k] / zscale, static_cast<double>(m));
  const auto qr = V.colPivHouseholderQr();
  AxialPolynomialField poly(curve.grid(), deg);
  std::vector<Samples> coeff(3 * (deg + 1), Samples(ns));
  double fit_residual = 0.0;
  for (std::size_t j = 0; j < ns; ++j) {
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd u(zs.size());
      for (std::size_t k = 0; k < zs.size(); ++k) u[k] = rows[k * ns + j].u[i];
      const Eigen::VectorXd p = qr.solve(u);
      fit_residual = std::max(fit_residual, (V * p - u).cwiseAbs().maxCoeff());
      for (std::size_t m = 0; m <= deg; ++m) coeff[m * 3 + i][j] = p[m] / std::pow(zscale, static_cast<double>(m));
    }
  }
  for (std::size_t m = 0; m <= deg; ++m)
    for (int i = 0; i < 3; ++i) poly.coeff(m)[i] = Secular(curve.grid(), coeff[m * 3 + i]);

  const FieldEvaluator ev = as_evaluator(poly);
  const double length = zs.back() > zs.front() ? zs.back() - zs.front() : cfg.length;
  const ResidualReport rep = verify_field(ev, nullptr, curve, mat, loads, length, zs);

  // Stored stresses against stresses rebuilt from the fitted displacement.
  double mismatch = 0.0, scale = 0.0;
  const double rho = moment_arm(curve);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const std::vector<StressState> d = derived_stresses(ev, curve, mat, zs[k]);
    for (std::size_t j = 0; j < ns; ++j) {
      const StressState& t = rows[k * ns + j].stress;
      const double a[] = {t.N_ss, t.N_sz, t.N_zz, t.M_ss / rho, t.M_sz / rho, t.M_zz / rho};
      const double b[] = {d[j].N_ss, d[j].N_sz, d[j].N_zz, d[j].M_ss / rho, d[j].M_sz / rho, d[j].M_zz / rho};
      for (int q = 0; q < 6; ++q) {
        mismatch = std::max(mismatch, std::abs(a[q] - b[q]));
        scale = std::max(scale, std::abs(a[q]));
      }
    }
  }

  GateLog gates;
  gates.check("table.equilibrium", rep.equilibrium.relative, cfg.gates.equilibrium);
  gates.check("table.resultants", rep.resultant_relative, cfg.gates.resultants);

  ojson summary;
  summary["format"] = "ksv-verify v1";
  summary["table"] = table_path;
  summary["grid_s"] = ns;
  summary["grid_z"] = zs.size();
  summary["fit_degree"] = deg;
  summary["fit_residual"] = fit_residual;
  summary["stress_mismatch"] = {{"max_abs", mismatch}, {"relative", scale > 0.0 ? mismatch / scale : mismatch}};
  summary["verification"] = report_json(rep, curve.centroid_offset());
  ojson failed = ojson::array();
  for (const auto& f : gates.failed) failed.push_back(f);
  summary["status"] = {{"pass", gates.failed.empty()}, {"checks", gates.checks}, {"failed", failed}};

  RunResult result;
  result.failed_gates = gates.failed;
  result.exit_status = gates.failed.empty() ? 0 : 1;
  result.summary = render(summary);
  return result;
}

}  // namespace ksv
