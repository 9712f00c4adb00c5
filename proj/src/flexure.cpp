#include "ksv/flexure.hpp"

#include "kernels.hpp"
#include "ksv/errors.hpp"
#include "ksv/linalg.hpp"

namespace ksv {

using namespace detail;

namespace {

// C (1 - nu^2) a . r_hat - nu b . (n + r_hat / R)
Samples axial_flux(const SectionCurve& c, const ShellMaterial& m, const Vec3& a, const Vec3& b) {
  const Samples& k = c.curvature();
  Samples out(c.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Vec3 rh = c.hat_r(j);
    out[j] = m.C * (1.0 - m.nu * m.nu) * a.dot(rh) - m.nu * b.dot(c.normal(j) + k[j] * rh);
  }
  return out;
}

}  // namespace

FlexureFunction flexure_function(const Vec3& A_hat, const Vec3& B_hat, const SectionCurve& curve,
                                 const ShellMaterial& mat) {
  const PeriodicGrid& grid = curve.grid();
  const auto memb = membrane_term(curve, mat, B_hat);
  const auto bend = bending_term(curve, kernel_g(curve, mat, A_hat, B_hat, true));
  const Samples r2 = radius_squared(curve);
  const Samples ar = dot_hat_r(curve, A_hat);
  const Samples at = dot_tangent(curve, A_hat);
  const Samples rt = r_dot_tau(curve);
  Samples local(curve.size());
  for (std::size_t j = 0; j < local.size(); ++j) {
    local[j] = 0.5 * mat.nu * r2[j] * at[j] - mat.nu * ar[j] * rt[j];
  }
  Secular integrand(grid, local);
  integrand += (memb[0] + bend[0]) * curve.tangent1();
  integrand += (memb[1] + bend[1]) * curve.tangent2();
  const Secular flux = cumulative_integral(curve, axial_flux(curve, mat, A_hat, B_hat));
  integrand += (2.0 / (mat.C * (1.0 - mat.nu))) * flux;

  const Secular total = cumulative_integral(curve, integrand);
  FlexureFunction out;
  out.K0 = total.end_value() / curve.perimeter();
  out.psi = out.K0 * Secular::identity(grid) - total;
  return out;
}

double flexure_twist(const Vec3& A_hat, const Vec3& B_hat, double K0, const SectionCurve& curve,
                     const ShellMaterial& mat) {
  const double nu = mat.nu;
  const Secular g = cumulative_integral(curve, kernel_g(curve, mat, A_hat, B_hat, true));
  const Secular flux = cumulative_integral(curve, axial_flux(curve, mat, A_hat, B_hat));
  const Samples arx = dot_r_cross_e3(curve, A_hat);
  const Samples an = dot_normal(curve, A_hat);
  const Samples br = dot_hat_r(curve, B_hat);
  const Samples rt = r_dot_tau(curve);
  const Samples rn = r_dot_n(curve);

  Samples local(curve.size());
  for (std::size_t j = 0; j < local.size(); ++j) {
    local[j] = 2.0 * mat.D * (1.0 - nu) * nu * arx[j] +
               rt[j] * (mat.D * (1.0 - nu * nu) * an[j] + nu * br[j]);
  }
  double rhs = -mat.C * (1.0 - nu) * curve.area() * K0 + curve.closed_integral(local);
  rhs -= 2.0 * mat.D * (1.0 - nu) * g.definite_integral();
  rhs += (flux * rn).definite_integral();
  return rhs / torsional_rigidity(curve, mat);
}

FlexureSolution solve_flexure(const SectionCurve& curve, const ShellMaterial& mat,
                              const ResultantLoads& loads) {
  if (loads.force[2] != 0.0 || loads.moment[0] != 0.0 || loads.moment[1] != 0.0 ||
      loads.moment[2] != 0.0) {
    throw NonTransverseLoad("flexure loads must be an in-plane force with zero moment");
  }
  const Mat3 coupling = coupling_matrix(curve, mat);
  const Mat3 system = resultant_matrix(curve, mat, coupling);
  const Vec3 rhs(-loads.force[0], -loads.force[1], 0.0);
  FlexureSolution sol{curve, mat};
  sol.coupling = coupling;
  sol.A_hat = solve3(system, rhs, "flexure system");
  sol.B_hat = coupling * sol.A_hat;
  FlexureFunction ff = flexure_function(sol.A_hat, sol.B_hat, curve, mat);
  sol.K0 = ff.K0;
  sol.psi = std::move(ff.psi);
  sol.K_tilde = flexure_twist(sol.A_hat, sol.B_hat, sol.K0, curve, mat);
  sol.phi = torsion_function(curve);
  return sol;
}

AxialPolynomialField flexure_field(const FlexureSolution& sol) {
  const SectionCurve& c = sol.curve;
  const PeriodicGrid& grid = c.grid();
  AxialPolynomialField f(grid, 3);

  f.coeff(3)[0] = Secular::constant(grid, -sol.A_hat[0] / 6.0);
  f.coeff(3)[1] = Secular::constant(grid, -sol.A_hat[1] / 6.0);
  f.coeff(2)[2] = Secular(grid, 0.5 * dot_hat_r(c, sol.A_hat));

  const auto pois = poisson_term(c, sol.mat, sol.A_hat);
  const auto tw = twist_term(c, sol.K_tilde);
  const auto memb = membrane_term(c, sol.mat, sol.B_hat);
  const auto bend = bending_term(c, kernel_g(c, sol.mat, sol.A_hat, sol.B_hat, true));
  for (int a = 0; a < 2; ++a) f.coeff(1)[a] = Secular(grid, pois[a]) + Secular(grid, tw[a]) + memb[a] + bend[a];

  f.coeff(0)[2] = Secular(grid, sol.K_tilde * sol.phi) + sol.psi;
  return f;
}

Vec3 flexure_displacement(const FlexureSolution& sol, double s, double z) {
  return flexure_field(sol).value(s, z);
}

std::vector<StressState> flexure_stress(const FlexureSolution& sol, double z) {
  const SectionCurve& c = sol.curve;
  const ShellMaterial& m = sol.mat;
  const std::size_t n = c.size();
  const Samples& k = c.curvature();
  const Samples flux_s = axial_flux(c, m, sol.A_hat, sol.B_hat);
  const Secular flux = cumulative_integral(c, flux_s);
  const Secular g = cumulative_integral(c, kernel_g(c, m, sol.A_hat, sol.B_hat, true));
  const double nsz0 = m.C * (1.0 - m.nu) * (sol.K_tilde * c.area() / c.perimeter() + 0.5 * sol.K0);
  const double c1 = 1.0 - m.nu * m.nu;
  std::vector<StressState> out(n);
  Samples dmzs(n, 0.0), dmzz(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 rh = c.hat_r(j);
    const Vec3 nrm = c.normal(j);
    const Vec3 tau = c.tangent(j);
    const Vec3 rxe3(c.x2()[j], -c.x1()[j], 0.0);
    StressState& s = out[j];
    s.N_ss = -z * sol.B_hat.dot(nrm + k[j] * rh);
    s.N_zz = z * flux_s[j];
    s.N_sz = nsz0 - flux.at_node(j);
    s.M_ss = -z * sol.B_hat.dot(rh);
    dmzz[j] = -(m.D * c1 * sol.A_hat.dot(nrm) + m.nu * sol.B_hat.dot(rh));
    s.M_zz = z * dmzz[j];
    s.M_sz = m.D * (1.0 - m.nu) *
             (-sol.K_tilde + m.nu * sol.A_hat.dot(rxe3) + sol.B_hat.dot(tau) / m.C - g.at_node(j));
  }
  return effective_tractions(std::move(out), dmzs, dmzz, c);
}

StressState flexure_stress(const FlexureSolution& sol, double s, double z) {
  return interpolate_stress(sol.curve, flexure_stress(sol, z), s);
}

}  // namespace ksv
