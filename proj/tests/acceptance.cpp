// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Reference values come from tests/oracles.hpp, never from the library.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ksv/config.hpp"
#include "ksv/flexure.hpp"
#include "ksv/thin.hpp"
#include "oracles.hpp"

using namespace ksv;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  if (!pass) ++failures;
}

template <typename... Args>
void detail(const char* fmt, Args... args) {
  std::printf("    ");
  if constexpr (sizeof...(Args) == 0) std::fputs(fmt, stdout);
  else std::printf(fmt, args...);
  std::printf("\n");
}

const ShellMaterial kMat = stiffnesses(1.0, 0.3, 0.01);
const oracle::Material kRef = oracle::material(1.0, 0.3, 0.01);

ResultantLoads load(Vec3 R, Vec3 M) { return {R, M}; }

double rel(double a, double b, double scale) { return scale > 0 ? std::abs(a - b) / scale : std::abs(a - b); }

double rel3(const Vec3& a, const Vec3& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return scale > 0 ? (a - b).cwiseAbs().maxCoeff() / scale : 0.0;
}

using PointField = std::function<Vec3(double, double)>;

struct FieldGap {
  double raw = 0, modulo_rigid = 0, scale = 0;
};

FieldGap gap(const SectionCurve& c, const PointField& a, const PointField& b, double length = 1.0,
             std::size_t ns = 64, std::size_t nz = 8) {
  FieldGap g;
  std::vector<Eigen::Vector3d> r, du;
  for (double z : stations(length, nz)) {
    for (std::size_t k = 0; k < ns; ++k) {
      const double s = c.perimeter() * k / ns;
      const Vec3 ua = a(s, z), d = ua - b(s, z);
      g.raw = std::max(g.raw, d.cwiseAbs().maxCoeff());
      g.scale = std::max(g.scale, ua.cwiseAbs().maxCoeff());
      r.emplace_back(c.grid().interpolate(c.x1(), s), c.grid().interpolate(c.x2(), s), z);
      du.push_back(d);
    }
  }
  g.modulo_rigid = oracle::modulo_rigid(r, du);
  return g;
}

SectionCurve unit_circle(std::size_t n = 512) { return build_section(FourierCurveSpec::circle(1.0), n); }
SectionCurve ellipse21(std::size_t n = 512) { return build_section(FourierCurveSpec::ellipse(2.0, 1.0), n); }

// 1. Circular oracle equality.
void criterion1() {
  const SectionCurve c = unit_circle();
  struct Case {
    const char* name;
    Vec3 R, M;
  };
  const Case cases[] = {{"M3", {0, 0, 0}, {0, 0, 1}},
                        {"M2", {0, 0, 0}, {0, 1, 0}},
                        {"R3", {0, 0, 1}, {0, 0, 0}},
                        {"R1", {1, 0, 0}, {0, 0, 0}}};
  bool coeff_ok = true, disp_ok = true;
  double worst_coeff = 0, worst_disp = 0;
  for (const Case& k : cases) {
    const oracle::Circle o = oracle::circle(1.0, kRef, {k.R[0], k.R[1], k.R[2]}, {k.M[0], k.M[1], k.M[2]});
    const CircularCase cc = circle_coefficients(1.0, kMat, load(k.R, k.M));
    const double module_vs_formula =
        std::max({rel(cc.K, o.K, std::abs(o.K)), rel3(cc.A, Vec3(o.A1, o.A2, o.A3bar / (2 * oracle::pi))),
                  rel3(cc.B, Vec3(o.B1, o.B2, o.B3)), rel3(cc.A_hat, Vec3(o.Ah1, o.Ah2, 0)),
                  rel3(cc.B_hat, Vec3(o.Bh1, o.Bh2, 0))});
    double e = 0;
    PointField exact;
    if (k.R[0] == 0) {
      const EBTSolution s = solve_ebt(c, kMat, load(k.R, k.M));
      const double kscale = std::max(std::abs(o.K), 1e-300);
      e = std::max({o.K != 0 ? rel(s.K, o.K, kscale) : 0.0, rel3(s.A, Vec3(o.A1, o.A2, o.A3bar / (2 * oracle::pi))),
                    rel3(s.B, Vec3(o.B1, o.B2, o.B3))});
      detail("%s: K %.12g vs %.12g | A (%.10g, %.10g, %.10g) vs (%.10g, %.10g, %.10g)", k.name, s.K, o.K, s.A[0],
             s.A[1], s.A[2], o.A1, o.A2, o.A3bar / (2 * oracle::pi));
      detail("%s: B (%.10g, %.10g, %.10g) vs -nu D A = (%.10g, %.10g, %.10g)", k.name, s.B[0], s.B[1], s.B[2], o.B1,
             o.B2, o.B3);
      auto f = std::make_shared<AxialPolynomialField>(ebt_field(s));
      exact = [f](double ss, double z) { return f->value(ss, z); };
    } else {
      const FlexureSolution s = solve_flexure(c, kMat, load(k.R, k.M));
      const double ah = std::max(std::abs(o.Ah1), std::abs(o.Ah2));
      e = std::max({rel3(s.A_hat, Vec3(o.Ah1, o.Ah2, 0)), rel3(s.B_hat, Vec3(o.Bh1, o.Bh2, 0)),
                    rel(s.K_tilde, 0.0, ah), rel(s.K0, o.K0, 2 * (1 + kRef.nu) * ah)});
      detail("%s: A_hat (%.10g, %.3g, %.3g) vs (%.10g, 0, 0) | B_hat1 %.10g vs %.10g | K_tilde %.3g | K0 %.3g vs %.3g",
             k.name, s.A_hat[0], s.A_hat[1], s.A_hat[2], o.Ah1, s.B_hat[0], o.Bh1, s.K_tilde, s.K0, o.K0);
      auto f = std::make_shared<AxialPolynomialField>(flexure_field(s));
      exact = [f](double ss, double z) { return f->value(ss, z); };
    }
    const PointField circ = [cc](double ss, double z) { return circle_displacement(cc, ss, z, PsiVariant::Corollary); };
    const FieldGap g = gap(c, exact, circ);
    const ThinSolution t = thin_coefficients(c, kMat, load(k.R, k.M));
    auto tf = std::make_shared<AxialPolynomialField>(thin_displacement_field(t));
    const FieldGap gt = gap(c, [tf](double ss, double z) { return tf->value(ss, z); }, circ);
    detail("%s: coefficient rel err %.3e (gate 1e-9); displacement max abs %.3e (gate 1e-8), modulo rigid %.3e; "
           "thin pipeline modulo rigid %.3e; circular module vs typed formulas %.1e",
           k.name, e, g.raw, g.modulo_rigid, gt.modulo_rigid, module_vs_formula);
    worst_coeff = std::max(worst_coeff, e);
    worst_disp = std::max(worst_disp, g.raw);
    coeff_ok = coeff_ok && e <= 1e-9 && module_vs_formula <= 1e-12;
    disp_ok = disp_ok && g.raw <= 1e-8;
  }
  detail("exact coefficients carry the D/(C R0^2) = h^2/12 terms the closed forms drop, e.g. "
         "B_a = -nu D A_a / (1 + 4 D/C), B_3 = -nu D A_3 / (1 + D/C)");
  report(1, coeff_ok && disp_ok,
         "general exact pipeline vs circular closed form: worst coefficient rel err " + std::to_string(worst_coeff) +
             ", worst displacement abs gap " + std::to_string(worst_disp));
}

// 2. Twist-torque.
void criterion2() {
  const SectionCurve c = unit_circle();
  const double area = oracle::pi, L = 2 * oracle::pi;
  const double ke_ref = oracle::twist_exact(kRef, area, L, 1.0);
  const double kt_ref = oracle::twist_thin(kRef, area, L, 1.0);
  const double ke = solve_ebt(c, kMat, load({0, 0, 0}, {0, 0, 1})).K;
  const double kt = thin_coefficients(c, kMat, load({0, 0, 0}, {0, 0, 1})).K;
  const double gap_ref = kRef.D * L / (kRef.C * area * area / L);
  const double gap_got = kt / ke - 1.0;
  const double e1 = rel(ke, ke_ref, std::abs(ke_ref)), e2 = rel(kt, kt_ref, std::abs(kt_ref));
  const double e3 = rel(gap_got, gap_ref, gap_ref);
  detail("exact K %.12g vs formula %.12g (rel %.2e); thin K %.12g vs formula %.12g (rel %.2e)", ke, ke_ref, e1, kt,
         kt_ref, e2);
  detail("gap K_thin/K_exact - 1 = %.10e vs D L / (C A^2 / L) = %.10e (rel %.2e)", gap_got, gap_ref, e3);
  detail("quoted values -41.3795 / -41.3805 differ from the formulas by %.1e / %.1e relative (rounding in the quote)",
         rel(ke, -41.3795, 41.3795), rel(kt, -41.3805, 41.3805));
  report(2, e1 <= 1e-6 && e2 <= 1e-6 && e3 <= 1e-6, "twist-torque, exact and thin, and their Ds/(CA^2/s) gap");
}

// 3. Torsion function.
void criterion3() {
  const Samples phic = torsion_function(unit_circle());
  double circ = 0;
  for (double v : phic) circ = std::max(circ, std::abs(v));
  const SectionCurve e = ellipse21();
  const Samples phi = torsion_function(e);
  const oracle::Ellipse oe{2.0, 1.0};
  const auto ref = oracle::ellipse_phi(oe, oracle::uniform_arc(oe.perimeter(), e.size()));
  double err = 0, scale = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    err = std::max(err, std::abs(phi[j] - ref[j]));
    scale = std::max(scale, std::abs(ref[j]));
  }
  detail("circle max|phi| %.3e (gate 1e-10); ellipse (2,1) max|phi - oracle| %.3e with max|phi| %.4f (gate 1e-9)", circ,
         err, scale);
  report(3, circ < 1e-10 && err < 1e-9, "torsion function on circle and ellipse (2,1)");
}

// 4. Equilibrium certification on the ellipse.
void criterion4() {
  const Vec3 M(0.5, 0.25, 1.0);
  const Vec3 R(0.3, -0.2, 0.0);
  bool ok = true;
  for (const char* which : {"EBT", "flexure"}) {
    double res[2];
    int i = 0;
    for (std::size_t n : {128, 512}) {
      const SectionCurve e = ellipse21(n);
      AxialPolynomialField f;
      if (std::string(which) == "EBT") f = ebt_field(solve_ebt(e, kMat, load({0, 0, 1}, M)));
      else f = flexure_field(solve_flexure(e, kMat, load(R, {0, 0, 0})));
      res[i++] = equilibrium_residual(as_evaluator(f), e, kMat, stations(1.0, 5)).relative;
    }
    const double drop = res[0] / res[1];
    detail("%s: relative residual %.3e at n_s = 128, %.3e at n_s = 512, drop %.0fx", which, res[0], res[1], drop);
    ok = ok && res[1] < 1e-6 && drop >= 100;
  }
  report(4, ok, "exact EBT and flexure fields on ellipse (2,1) pass equilibrium and converge");
}

// 5. Resultant round trip and global balance.
void criterion5() {
  bool ok = true;
  double worst = 0, worst_bal = 0, worst_m = 0;
  for (int shape = 0; shape < 2; ++shape) {
    const SectionCurve c = shape == 0 ? unit_circle() : ellipse21();
    const ResultantLoads ebt[] = {load({0, 0, 1}, {0, 0, 0}), load({0, 0, 0}, {1, 0, 0}),
                                  load({0, 0, 0}, {0, 1, 0}), load({0, 0, 0}, {0, 0, 1}),
                                  load({0, 0, -0.7}, {0.4, -1.2, 0.9})};
    for (const auto& l : ebt) {
      const auto ev = as_evaluator(ebt_field(solve_ebt(c, kMat, l)));
      const double e = resultant_error(end_resultants(ev, c, kMat, 0.0), l, c);
      const double b = global_balance(ev, c, kMat, 2.0).relative;
      worst = std::max(worst, e);
      worst_bal = std::max(worst_bal, b);
    }
    const ResultantLoads flex[] = {load({1, 0, 0}, {0, 0, 0}), load({0, 1, 0}, {0, 0, 0}),
                                   load({0.6, -0.8, 0}, {0, 0, 0})};
    for (const auto& l : flex) {
      const auto ev = as_evaluator(flexure_field(solve_flexure(c, kMat, l)));
      const Resultants r = end_resultants(ev, c, kMat, 0.0);
      worst = std::max(worst, resultant_error(r, l, c));
      worst_m = std::max(worst_m, r.moment.norm() / (l.force.norm() * moment_arm(c)));
      worst_bal = std::max(worst_bal, global_balance(ev, c, kMat, 2.0).relative);
    }
  }
  ok = worst <= 1e-7 && worst_m <= 1e-7 && worst_bal <= 1e-7;
  detail("exact solvers, circle and ellipse, 8 load cases each: worst resultant error %.3e, flexure |M(u)| / (|R| rho) "
         "%.3e, worst balance defect %.3e",
         worst, worst_m, worst_bal);
  // The reduced solutions are approximations by construction; their errors are O((h/L)^2).
  const SectionCurve e = ellipse21();
  const ResultantLoads mixed = load({0.3, -0.2, 1.0}, {0.5, 0.25, 1.0});
  const ThinSolution t = thin_coefficients(e, kMat, mixed);
  const double et = resultant_error(end_resultants(as_evaluator(thin_displacement_field(t)), e, kMat, 0.0), mixed, e);
  const CircularCase cc = circle_coefficients(1.0, kMat, mixed);
  const SectionCurve c = unit_circle();
  const double ec =
      resultant_error(end_resultants(circle_evaluator(cc, c, PsiVariant::Corollary), c, kMat, 0.0), mixed, c);
  detail("informational: thin solution resultant error %.3e (ellipse, mixed load), circular closed form %.3e (circle)",
         et, ec);
  report(5, ok, "end resultants and global balance of the exact solvers");
}

// 6. Theorem 1 on the flexure field.
void criterion6() {
  bool ok = true;
  for (int shape = 0; shape < 2; ++shape) {
    const SectionCurve c = shape == 0 ? unit_circle() : ellipse21();
    const ResultantLoads l = load({1.0, 0.5, 0.0}, {0, 0, 0});
    const FieldEvaluator du = z_derivative(as_evaluator(flexure_field(solve_flexure(c, kMat, l))), c);
    const ResultantLoads want{Vec3::Zero(), Vec3(l.force[1], -l.force[0], 0.0)};
    double worst = 0;
    for (double z0 : {0.0, 0.7}) worst = std::max(worst, resultant_error(end_resultants(du, c, kMat, z0), want, c));
    detail("%s: R(du/dz) = 0, M(du/dz) = (R2, -R1, 0): relative error %.3e (gate 1e-5)",
           shape == 0 ? "circle" : "ellipse (2,1)", worst);
    ok = ok && worst <= 1e-5;
  }
  report(6, ok, "z-derivative of the flexure field carries the bending moments e_ab R_b");
}

// 7. Thin-limit scaling on the ellipse.
void criterion7() {
  const SectionCurve e = ellipse21(256);
  struct Case {
    const char* name;
    Vec3 R, M;
  };
  const Case cases[] = {{"M1", {0, 0, 0}, {1, 0, 0}}, {"M2", {0, 0, 0}, {0, 1, 0}}, {"M3", {0, 0, 0}, {0, 0, 1}},
                        {"R3", {0, 0, 1}, {0, 0, 0}}, {"R1", {1, 0, 0}, {0, 0, 0}}, {"R2", {0, 1, 0}, {0, 0, 0}}};
  bool ok = true;
  for (const Case& k : cases) {
    double g[2], gr[2];
    int i = 0;
    for (double h : {0.01, 0.005}) {
      const ShellMaterial m = stiffnesses(1.0, 0.3, h);
      const ResultantLoads l = load(k.R, k.M);
      auto ex = std::make_shared<AxialPolynomialField>(k.R[0] == 0 && k.R[1] == 0 ? ebt_field(solve_ebt(e, m, l))
                                                                                  : flexure_field(solve_flexure(e, m, l)));
      auto th = std::make_shared<AxialPolynomialField>(thin_displacement_field(thin_coefficients(e, m, l)));
      const FieldGap fg = gap(e, [ex](double s, double z) { return ex->value(s, z); },
                              [th](double s, double z) { return th->value(s, z); });
      g[i] = fg.raw / fg.scale;
      gr[i] = fg.modulo_rigid / fg.scale;
      ++i;
    }
    const double ratio = g[0] / g[1];
    detail("%s: relative gap %.3e at h, %.3e at h/2, ratio %.3f (modulo rigid motion: ratio %.3f)", k.name, g[0], g[1],
           ratio, gr[0] / gr[1]);
    ok = ok && ratio >= 3 && ratio <= 5;
  }
  report(7, ok, "exact-vs-thin field gap scales as (h/L)^2 on ellipse (2,1)");
}

double stress_diff(const StressState& a, const StressState& b, double rho) {
  const double d[] = {a.N_ss - b.N_ss, a.N_sz - b.N_sz, a.N_zz - b.N_zz, (a.M_ss - b.M_ss) / rho,
                      (a.M_sz - b.M_sz) / rho, (a.M_zz - b.M_zz) / rho};
  double m = 0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

double stress_size(const StressState& a, double rho) {
  return std::max({std::abs(a.N_ss), std::abs(a.N_sz), std::abs(a.N_zz), std::abs(a.M_ss) / rho,
                   std::abs(a.M_sz) / rho, std::abs(a.M_zz) / rho});
}

// 8. z-structure of the stresses.
void criterion8() {
  const SectionCurve e = ellipse21();
  const double rho = moment_arm(e);
  const EBTSolution s = solve_ebt(e, kMat, load({0, 0, 1}, {0.5, 0.25, 1}));
  bool exact_equal = true;
  double derived = 0, scale = 0;
  const auto ev = as_evaluator(ebt_field(s));
  const auto d0 = derived_stresses(ev, e, kMat, 0.0), d1 = derived_stresses(ev, e, kMat, 3.0);
  for (std::size_t j = 0; j < e.size(); j += 7) {
    const double sj = e.grid().node(j);
    const StressState a = ebt_stress(s, sj), b = ebt_stress(s, sj);
    exact_equal = exact_equal && stress_diff(a, b, 1.0) == 0.0;
  }
  for (std::size_t j = 0; j < e.size(); ++j) {
    derived = std::max(derived, stress_diff(d0[j], d1[j], rho));
    scale = std::max(scale, stress_size(d0[j], rho));
  }
  detail("EBT closed-form stresses identical at two stations: %s; stresses rebuilt from u at z = 0 and z = 3 differ by "
         "%.3e relative",
         exact_equal ? "yes" : "no", derived / scale);

  const FlexureSolution f = solve_flexure(e, kMat, load({0.3, -0.2, 0}, {0, 0, 0}));
  const auto f0 = flexure_stress(f, 0.0), f1 = flexure_stress(f, 1.0), f2 = flexure_stress(f, 2.0);
  double lin = 0, fscale = 0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    StressState mid;
    mid.N_ss = 0.5 * (f0[j].N_ss + f2[j].N_ss);
    mid.N_sz = 0.5 * (f0[j].N_sz + f2[j].N_sz);
    mid.N_zz = 0.5 * (f0[j].N_zz + f2[j].N_zz);
    mid.M_ss = 0.5 * (f0[j].M_ss + f2[j].M_ss);
    mid.M_sz = 0.5 * (f0[j].M_sz + f2[j].M_sz);
    mid.M_zz = 0.5 * (f0[j].M_zz + f2[j].M_zz);
    lin = std::max(lin, stress_diff(f1[j], mid, rho));
    fscale = std::max({fscale, stress_size(f0[j], rho), stress_size(f2[j], rho)});
  }
  detail("flexure three-point linearity defect %.3e relative (gate 1e-12)", lin / fscale);
  report(8, exact_equal && derived / scale <= 1e-10 && lin / fscale <= 1e-12,
         "EBT stresses independent of z, flexure stresses linear in z");
}

// 9. psi-variant adjudication through the run summary.
void criterion9() {
  RunConfig cfg;
  cfg.section.label = "circle(1)";
  cfg.section.spec = FourierCurveSpec::circle(1.0);
  cfg.section.circle = true;
  cfg.section.radius = 1.0;
  cfg.E = 1.0;
  cfg.nu = 0.3;
  cfg.h = 0.01;
  cfg.length = 1.0;
  cfg.loads = load({1, 0, 0}, {0, 0, 0});
  cfg.mode = RunMode::Circular;
  cfg.grid_s = 512;
  cfg.output.dir = (std::filesystem::temp_directory_path() / "ksv_acceptance_psi").string();
  cfg.output.csv = false;
  const RunResult r = run_case(cfg);
  const auto doc = nlohmann::json::parse(r.summary);
  const auto& circ = doc["circular"];
  const double a = circ["psi_variants"]["corollary"]["combined_residual"].get<double>();
  const double b = circ["psi_variants"]["flexure-fn"]["combined_residual"].get<double>();
  const std::string winner = circ["psi_winner"].get<std::string>();
  const double ratio = std::max(a, b) / std::min(a, b);
  detail("combined residual: corollary %.3e, flexure-fn %.3e, ratio %.0f; summary winner '%s'", a, b, ratio,
         winner.c_str());
  const bool tie_ok = winner == "tie" && std::max(a, b) < 1e-6;
  report(9, (ratio >= 100 && winner != "tie") || tie_ok, "psi-variant adjudicated and recorded: " + winner);
}

// 10. Property suite.
void criterion10() {
  const SectionCurve e = ellipse21(256);
  // Rigid-body annihilation.
  const Vec3 c0(0.3, -1.0, 2.0), d0(0.2, 0.5, -0.7);
  FieldEvaluator rigid;
  rigid.z_degree = 1;
  rigid.sample = [&](double z) {
    VecSamples u(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) u[j] = c0 + d0.cross(Vec3(e.x1()[j], e.x2()[j], z));
    return u;
  };
  const EquilibriumResidual rr = equilibrium_residual(rigid, e, kMat, stations(1.0, 3));
  const Resultants rres = end_resultants(rigid, e, kMat, 0.0);
  const double rigid_max = std::max({rr.max[0], rr.max[1], rr.max[2], rr.stress_scale});
  const bool rigid_ok = rigid_max < 1e-9 && rres.force.norm() + rres.moment.norm() < 1e-9;
  detail("rigid-body field: max residual / stress %.3e, resultants %.3e", rigid_max,
         rres.force.norm() + rres.moment.norm());

  // Load linearity.
  const ResultantLoads l1 = load({0, 0, 1}, {0.5, -0.3, 0.8}), l2 = load({0, 0, -0.4}, {0.1, 0.9, -0.2});
  const double al = 1.7, be = -0.6;
  const ResultantLoads l12 = load(al * l1.force + be * l2.force, al * l1.moment + be * l2.moment);
  const EBTSolution s1 = solve_ebt(e, kMat, l1), s2 = solve_ebt(e, kMat, l2), s12 = solve_ebt(e, kMat, l12);
  double lin = std::max({rel3(s12.A, al * s1.A + be * s2.A), rel3(s12.B, al * s1.B + be * s2.B),
                         rel(s12.K, al * s1.K + be * s2.K, std::abs(s12.K))});
  const ResultantLoads f1 = load({1, 0, 0}, {0, 0, 0}), f2 = load({0.2, -0.9, 0}, {0, 0, 0});
  const ResultantLoads f12 = load(al * f1.force + be * f2.force, Vec3::Zero());
  const FlexureSolution g1 = solve_flexure(e, kMat, f1), g2 = solve_flexure(e, kMat, f2),
                        g12 = solve_flexure(e, kMat, f12);
  lin = std::max({lin, rel3(g12.A_hat, al * g1.A_hat + be * g2.A_hat), rel3(g12.B_hat, al * g1.B_hat + be * g2.B_hat),
                  rel(g12.K_tilde, al * g1.K_tilde + be * g2.K_tilde, std::abs(g12.K_tilde)),
                  rel(g12.K0, al * g1.K0 + be * g2.K0, std::abs(g12.K0))});
  detail("load linearity: worst relative deviation %.3e", lin);
  const bool lin_ok = lin < 1e-12;

  // Rotation equivariance.
  const double th = 0.7;
  Mat3 Q = Mat3::Identity();
  Q.topLeftCorner<2, 2>() << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const SectionCurve er = build_section(FourierCurveSpec::ellipse(2.0, 1.0).rotated(th), 256);
  const ResultantLoads mixed = load({0.3, -0.2, 0.8}, {0.5, 0.25, 1.0});
  const ResultantLoads mixed_r = load(Q * mixed.force, Q * mixed.moment);
  auto solve_all = [](const SectionCurve& c, const ResultantLoads& l) {
    const EBTSolution s = solve_ebt(c, kMat, load({0, 0, l.force[2]}, l.moment));
    const FlexureSolution f = solve_flexure(c, kMat, load({l.force[0], l.force[1], 0}, Vec3::Zero()));
    return std::make_tuple(s, f, ebt_field(s) + flexure_field(f));
  };
  const auto [sa, fa, ua] = solve_all(e, mixed);
  const auto [sb, fb, ub] = solve_all(er, mixed_r);
  double rot = std::max({rel3(sb.A, Q * sa.A), rel3(sb.B, Q * sa.B), rel(sb.K, sa.K, std::abs(sa.K)),
                         rel3(fb.A_hat, Q * fa.A_hat), rel3(fb.B_hat, Q * fa.B_hat),
                         rel(fb.K0, fa.K0, std::abs(fa.K0))});
  double urot = 0, uscale = 0;
  for (double z : {0.0, 0.5, 1.0}) {
    const VecSamples a = ua.sample(z), b = ub.sample(z);
    for (std::size_t j = 0; j < a.size(); ++j) {
      urot = std::max(urot, (b[j] - Q * a[j]).cwiseAbs().maxCoeff());
      uscale = std::max(uscale, a[j].cwiseAbs().maxCoeff());
    }
  }
  detail("rotation by %.1f rad: coefficients %.3e, displacement %.3e relative", th, rot, urot / uscale);
  const bool rot_ok = rot < 1e-10 && urot / uscale < 1e-10;

  // Curve translation.
  const SectionCurve et = build_section(FourierCurveSpec::ellipse(2.0, 1.0).translated({3.0, -1.5}), 256);
  double tr = std::max({rel(et.perimeter(), e.perimeter(), e.perimeter()), rel(et.area(), e.area(), e.area()),
                        (et.inertia() - e.inertia()).cwiseAbs().maxCoeff() / e.inertia().norm()});
  for (std::size_t j = 0; j < e.size(); ++j) tr = std::max(tr, std::abs(et.curvature()[j] - e.curvature()[j]));
  const auto [st, ft, ut] = solve_all(et, mixed);
  tr = std::max({tr, rel3(st.A, sa.A), rel3(st.B, sa.B), rel(st.K, sa.K, std::abs(sa.K)), rel3(ft.A_hat, fa.A_hat)});
  double utr = 0;
  for (double z : {0.0, 1.0}) {
    const VecSamples a = ua.sample(z), b = ut.sample(z);
    for (std::size_t j = 0; j < a.size(); ++j) utr = std::max(utr, (a[j] - b[j]).cwiseAbs().maxCoeff());
  }
  detail("translation by (3, -1.5): geometry and coefficients %.3e, displacement %.3e relative; centroid found at "
         "(%.12g, %.12g)",
         tr, utr / uscale, et.centroid_offset()[0], et.centroid_offset()[1]);
  const bool tr_ok = tr < 1e-10 && utr / uscale < 1e-10;

  report(10, rigid_ok && lin_ok && rot_ok && tr_ok,
         "rigid-body annihilation, load linearity, rotation equivariance, translation invariance");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& ex) {
      report(static_cast<int>(i + 1), false, std::string("threw: ") + ex.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
