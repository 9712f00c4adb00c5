#include "ksv/circular.hpp"

#include <cmath>
#include <numbers>

#include "ksv/errors.hpp"

namespace ksv {

std::string to_string(PsiVariant v) { return v == PsiVariant::Corollary ? "corollary" : "flexure-fn"; }

PsiVariant parse_psi_variant(const std::string& text) {
  if (text == "corollary") return PsiVariant::Corollary;
  if (text == "flexure-fn") return PsiVariant::FlexureFunction;
  throw ValidationError("psi_variant", "psi_variant must be 'corollary' or 'flexure-fn', got '" + text + "'");
}

CircularCase circle_coefficients(double R0, const ShellMaterial& mat, const ResultantLoads& loads) {
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw InvalidRadius("circle radius must be positive");
  constexpr double pi = std::numbers::pi;
  CircularCase c;
  c.R0 = R0;
  c.mat = mat;
  c.loads = loads;
  c.perimeter = 2.0 * pi * R0;
  c.area = pi * R0 * R0;
  c.inertia = pi * R0 * R0 * R0;
  const double eh = mat.E * mat.h;
  const double r3 = R0 * R0 * R0;
  c.K = -loads.moment[2] / (2.0 * pi * r3 * mat.mu * mat.h);
  c.A3_bar = -loads.force[2] / (2.0 * pi * R0 * eh);
  c.A = Vec3(loads.moment[1] / (pi * r3 * eh), -loads.moment[0] / (pi * r3 * eh), c.A3_bar / c.perimeter);
  c.A_hat = Vec3(-loads.force[0] / (pi * r3 * eh), -loads.force[1] / (pi * r3 * eh), 0.0);
  c.B = -(mat.nu * mat.D / R0) * c.A;
  c.B_hat = -(mat.nu * mat.D / R0) * c.A_hat;
  c.K_tilde = 0.0;
  c.K0 = 2.0 * (1.0 + mat.nu) * R0 * R0 * c.A_hat[1];
  return c;
}

double psi_coefficient(const CircularCase& c, PsiVariant variant) {
  const double nu = c.mat.nu;
  const double factor = variant == PsiVariant::Corollary ? 2.0 * (1.0 + nu) : 0.5 * (4.0 + 3.0 * nu);
  return factor * c.R0 * c.R0;
}

namespace {

Vec3 displacement_at(const CircularCase& c, double x1, double x2, double z, PsiVariant variant) {
  const double nu = c.mat.nu;
  const double ahx = c.A_hat[0] * x1 + c.A_hat[1] * x2;
  const double axb = c.A[0] * x1 + c.A[1] * x2 + c.A3_bar;
  const double x[2] = {x1, x2};
  const double ex[2] = {x2, -x1};
  Vec3 u;
  for (int a = 0; a < 2; ++a) {
    u[a] = -z * z * z / 6.0 * c.A_hat[a] - 0.5 * z * z * c.A[a] - nu * z * ahx * x[a] - nu * axb * x[a] -
           c.K * z * ex[a];
  }
  u[2] = (0.5 * z * z + psi_coefficient(c, variant)) * ahx + z * axb;
  return u;
}

}  // namespace

Vec3 circle_displacement(const CircularCase& c, double s, double z, PsiVariant variant) {
  const double t = s / c.R0;
  return displacement_at(c, c.R0 * std::cos(t), c.R0 * std::sin(t), z, variant);
}

FieldEvaluator circle_evaluator(const CircularCase& c, const SectionCurve& curve, PsiVariant variant) {
  Samples x1 = curve.x1();
  Samples x2 = curve.x2();
  FieldEvaluator ev;
  ev.z_degree = 3;
  ev.sample = [c, x1 = std::move(x1), x2 = std::move(x2), variant](double z) {
    VecSamples out(x1.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = displacement_at(c, x1[j], x2[j], z, variant);
    return out;
  };
  return ev;
}

}  // namespace ksv
