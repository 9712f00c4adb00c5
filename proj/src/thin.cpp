#include "ksv/thin.hpp"

#include <numbers>

#include <Eigen/LU>

#include "kernels.hpp"
#include "ksv/errors.hpp"
#include "ksv/linalg.hpp"

namespace ksv {

using namespace detail;

namespace {

Mat2 inertia_checked(const SectionCurve& curve) {
  const Mat2& inertia = curve.inertia();
  Mat3 padded = Mat3::Identity();
  padded.topLeftCorner<2, 2>() = inertia;
  if (!(equilibrated_condition(padded) <= kConditionLimit)) {
    solve3(padded, Vec3(Vec3::Zero()), "section inertia");
  }
  return inertia;
}

// A_a [(nu/2) x_a' |x|^2 - nu x_a (x . x')]
Samples poisson_flux(const SectionCurve& c, const ShellMaterial& m, const Vec3& a) {
  const Samples r2 = radius_squared(c);
  const Samples rt = r_dot_tau(c);
  Samples out(c.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double at = a[0] * c.tangent1()[j] + a[1] * c.tangent2()[j];
    const double ax = a[0] * c.x1()[j] + a[1] * c.x2()[j];
    out[j] = 0.5 * m.nu * at * r2[j] - m.nu * ax * rt[j];
  }
  return out;
}

}  // namespace

Vec3 thin_coupling(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& A) {
  const Mat2 inertia = inertia_checked(curve);
  const Samples& k = curve.curvature();
  Mat2 ixk = Mat2::Zero();
  Vec2 xk = Vec2::Zero();
  const double h = curve.grid().spacing();
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const Vec2 x(curve.x1()[j], curve.x2()[j]);
    ixk += h * k[j] * x * x.transpose();
    xk += h * k[j] * x;
  }
  const double p = curve.perimeter();
  const Vec2 a(A[0], A[1]);
  const Vec2 rhs = -mat.nu * mat.D * (ixk * a + A[2] * p * xk);
  const Vec2 b = inertia.partialPivLu().solve(rhs);
  const double b3 = -mat.nu * mat.D / (p * p) * (a.dot(xk) + A[2] * p * 2.0 * std::numbers::pi);
  return {b[0], b[1], b3};
}

ThinFlexureFunction thin_flexure_function(const Vec3& A_hat, const Vec3& B_hat, const SectionCurve& curve,
                                          const ShellMaterial& mat) {
  const PeriodicGrid& grid = curve.grid();
  const double nu = mat.nu;
  const double area = curve.area();
  const double p = curve.perimeter();
  const auto bend = bending_term(curve, kernel_g(curve, mat, A_hat, B_hat, false));
  const Samples local = poisson_flux(curve, mat, A_hat);
  Secular tau_bend = bend[0] * curve.tangent1() + bend[1] * curve.tangent2();

  // psi integrand
  Secular integrand(grid, local);
  integrand += 2.0 * (1.0 + nu) *
               (A_hat[0] * cumulative_integral(curve, curve.x1()) + A_hat[1] * cumulative_integral(curve, curve.x2()));
  integrand += tau_bend;

  // K_tilde integrand
  const Samples phi = torsion_function(curve);
  Samples twist_local(curve.size());
  for (std::size_t j = 0; j < twist_local.size(); ++j) {
    const double ax = A_hat[0] * curve.x1()[j] + A_hat[1] * curve.x2()[j];
    twist_local[j] = local[j] - (1.0 + nu) * p / area * ax * phi[j];
  }
  Secular twist_integrand(grid, twist_local);
  twist_integrand += tau_bend;

  ThinFlexureFunction out;
  out.K_tilde = -twist_integrand.definite_integral() / (2.0 * area);
  const Secular rn = cumulative_integral(curve, r_dot_n(curve));
  const double moment = (A_hat[0] * (rn * curve.x1()) + A_hat[1] * (rn * curve.x2())).definite_integral();
  out.K0 = -out.K_tilde * 2.0 * area / p - (1.0 + nu) / area * moment;
  out.psi = out.K0 * Secular::identity(grid) - cumulative_integral(curve, integrand);
  return out;
}

ThinSolution thin_coefficients(const SectionCurve& curve, const ShellMaterial& mat,
                               const ResultantLoads& loads) {
  const Mat2 inertia = inertia_checked(curve);
  const double eh = mat.E * mat.h;
  const double p = curve.perimeter();
  ThinSolution sol{curve, mat};
  sol.phi = torsion_function(curve);

  const Vec2 bending(loads.moment[1] / eh, -loads.moment[0] / eh);
  const Vec2 a = inertia.partialPivLu().solve(bending);
  const double a3_bar = -loads.force[2] / (p * eh);
  sol.A = Vec3(a[0], a[1], a3_bar / p);
  sol.B = thin_coupling(curve, mat, sol.A);
  const double area = curve.area();
  sol.K = -loads.moment[2] * p / (4.0 * mat.mu * mat.h * area * area);

  const Vec2 ahat = inertia.partialPivLu().solve(Vec2(-loads.force[0] / eh, -loads.force[1] / eh));
  sol.A_hat = Vec3(ahat[0], ahat[1], 0.0);
  sol.B_hat = thin_coupling(curve, mat, sol.A_hat);
  ThinFlexureFunction ff = thin_flexure_function(sol.A_hat, sol.B_hat, curve, mat);
  sol.K_tilde = ff.K_tilde;
  sol.K0 = ff.K0;
  sol.psi = std::move(ff.psi);
  return sol;
}

AxialPolynomialField thin_displacement_field(const ThinSolution& sol) {
  const SectionCurve& c = sol.curve;
  const ShellMaterial& m = sol.mat;
  const PeriodicGrid& grid = c.grid();
  const Vec3 ahat_plane(sol.A_hat[0], sol.A_hat[1], 0.0);
  AxialPolynomialField f(grid, 3);

  f.coeff(3)[0] = Secular::constant(grid, -sol.A_hat[0] / 6.0);
  f.coeff(3)[1] = Secular::constant(grid, -sol.A_hat[1] / 6.0);

  f.coeff(2)[0] = Secular::constant(grid, -0.5 * sol.A[0]);
  f.coeff(2)[1] = Secular::constant(grid, -0.5 * sol.A[1]);
  f.coeff(2)[2] = Secular(grid, 0.5 * dot_hat_r(c, ahat_plane));

  const auto pois_hat = poisson_term(c, m, ahat_plane);
  const auto tw = twist_term(c, sol.K + sol.K_tilde);
  const auto bend_hat = bending_term(c, kernel_g(c, m, sol.A_hat, sol.B_hat, false));
  for (int a = 0; a < 2; ++a) f.coeff(1)[a] = Secular(grid, pois_hat[a]) + Secular(grid, tw[a]) + bend_hat[a];
  f.coeff(1)[2] = Secular(grid, dot_hat_r(c, sol.A));

  const auto pois = poisson_term(c, m, sol.A);
  const auto bend = bending_term(c, kernel_g(c, m, sol.A, sol.B, false));
  for (int a = 0; a < 2; ++a) f.coeff(0)[a] = Secular(grid, pois[a]) + bend[a];
  f.coeff(0)[2] = Secular(grid, (sol.K + sol.K_tilde) * sol.phi) + sol.psi;
  return f;
}

std::vector<StressState> thin_stress(const ThinSolution& sol, double z) {
  const SectionCurve& c = sol.curve;
  const ShellMaterial& m = sol.mat;
  const std::size_t n = c.size();
  const double c1 = 1.0 - m.nu * m.nu;
  const double area = c.area();
  const Vec3 a = z * sol.A_hat + sol.A;
  const Vec3 b = z * sol.B_hat + sol.B;
  const Secular g = cumulative_integral(c, kernel_g(c, m, sol.A_hat, sol.B_hat, false));
  const Secular x1i = cumulative_integral(c, c.x1());
  const Secular x2i = cumulative_integral(c, c.x2());
  const Secular rn = cumulative_integral(c, r_dot_n(c));
  const Vec2 first((rn * c.x1()).definite_integral(), (rn * c.x2()).definite_integral());
  const double shear0 = m.C * (1.0 - m.nu) * sol.K * area / c.perimeter();
  std::vector<StressState> out(n);
  Samples dmzs(n, 0.0), dmzz(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 rh = c.hat_r(j);
    const Vec3 nrm = c.normal(j);
    StressState& s = out[j];
    s.N_ss = 0.0;
    s.N_zz = m.C * c1 * a.dot(rh);
    const Vec2 lever(x1i.at_node(j) + first[0] / (2.0 * area), x2i.at_node(j) + first[1] / (2.0 * area));
    s.N_sz = shear0 - m.C * c1 * (sol.A_hat[0] * lever[0] + sol.A_hat[1] * lever[1]);
    s.M_ss = -b.dot(rh);
    s.M_zz = -m.D * c1 * a.dot(nrm) - m.nu * b.dot(rh);
    dmzz[j] = -m.D * c1 * sol.A_hat.dot(nrm) - m.nu * sol.B_hat.dot(rh);
    const double exa = sol.A_hat[0] * c.x2()[j] - sol.A_hat[1] * c.x1()[j];
    s.M_sz = -m.D * (1.0 - m.nu) * (sol.K + sol.K_tilde - m.nu * exa + g.at_node(j));
  }
  return effective_tractions(std::move(out), dmzs, dmzz, c);
}

ThinFieldSample thin_field(const ThinSolution& sol, double s, double z) {
  return {thin_displacement_field(sol).value(s, z), interpolate_stress(sol.curve, thin_stress(sol, z), s)};
}

}  // namespace ksv
