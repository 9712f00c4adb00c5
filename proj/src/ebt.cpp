#include "ksv/ebt.hpp"

#include <cmath>

#include "kernels.hpp"
#include "ksv/errors.hpp"
#include "ksv/linalg.hpp"

namespace ksv {

using namespace detail;

ContinuityMatrices continuity_matrices(const SectionCurve& curve, const ShellMaterial& mat) {
  ContinuityMatrices m;
  const Samples& k = curve.curvature();
  const std::size_t n = curve.size();
  const double h = curve.grid().spacing();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 rh = curve.hat_r(j);
    const Vec3 tau = curve.tangent(j);
    const double bw = 1.0 / mat.D + k[j] * k[j] / mat.C;
    const double x[2] = {curve.x1()[j], curve.x2()[j]};
    for (int a = 0; a < 2; ++a) {
      Vec3 ea = Vec3::Zero();
      ea[a] = 1.0;
      m.ma.row(a) += h * mat.nu * x[a] * k[j] * rh.transpose();
      m.mb.row(a) += h * (x[a] * bw * rh + (ea + tau[a] * tau) / mat.C).transpose();
    }
    m.ma.row(2) += h * mat.nu * k[j] * rh.transpose();
    m.mb.row(2) += h * bw * rh.transpose();
  }
  return m;
}

Mat3 coupling_matrix(const SectionCurve& curve, const ShellMaterial& mat) {
  const ContinuityMatrices m = continuity_matrices(curve, mat);
  return solve3(m.mb, Mat3(-m.ma), "continuity system");
}

Mat3 resultant_matrix(const SectionCurve& curve, const ShellMaterial& mat, const Mat3& coupling) {
  Mat3 pa = Mat3::Zero();
  Mat3 pb = Mat3::Zero();
  const Samples& k = curve.curvature();
  const double h = curve.grid().spacing();
  const double c1 = mat.C * (1.0 - mat.nu * mat.nu);
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const Vec3 rh = curve.hat_r(j);
    const Vec3 nrm = curve.normal(j);
    const double x[2] = {curve.x1()[j], curve.x2()[j]};
    for (int a = 0; a < 2; ++a) {
      pa.row(a) += h * c1 * (x[a] * rh + (mat.D / mat.C) * nrm[a] * nrm).transpose();
      pb.row(a) -= h * mat.nu * (x[a] * (k[j] * rh + nrm) - nrm[a] * rh).transpose();
    }
    pa.row(2) += h * c1 * rh.transpose();
    pb.row(2) -= h * mat.nu * k[j] * rh.transpose();
  }
  return pa + pb * coupling;
}

Samples torsion_function(const SectionCurve& curve) {
  Samples out = curve.grid().periodic_antiderivative(r_dot_n(curve));
  for (double& v : out) v = -v;
  return out;
}

double torsional_rigidity(const SectionCurve& curve, const ShellMaterial& mat) {
  const double a = curve.area();
  const double p = curve.perimeter();
  return 2.0 * (1.0 - mat.nu) * (mat.C * a * a / p + mat.D * p);
}

EBTSolution make_ebt_solution(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& A,
                              const Vec3& B, double K) {
  EBTSolution sol{curve, mat, A, B, K, torsion_function(curve), Mat3::Zero()};
  return sol;
}

EBTSolution solve_ebt(const SectionCurve& curve, const ShellMaterial& mat, const ResultantLoads& loads) {
  if (loads.force[0] != 0.0 || loads.force[1] != 0.0) {
    throw NonAxialForce("extension-bending-torsion loads must not carry an in-plane force");
  }
  const Mat3 coupling = coupling_matrix(curve, mat);
  const Mat3 system = resultant_matrix(curve, mat, coupling);
  const Vec3 rhs(loads.moment[1], -loads.moment[0], -loads.force[2]);
  const Vec3 A = solve3(system, rhs, "extension-bending system");
  const double K = -loads.moment[2] / torsional_rigidity(curve, mat);
  EBTSolution sol = make_ebt_solution(curve, mat, A, coupling * A, K);
  sol.coupling = coupling;
  return sol;
}

AxialPolynomialField ebt_field(const EBTSolution& sol) {
  const SectionCurve& c = sol.curve;
  const PeriodicGrid& grid = c.grid();
  AxialPolynomialField f(grid, 2);

  f.coeff(2)[0] = Secular::constant(grid, -0.5 * sol.A[0]);
  f.coeff(2)[1] = Secular::constant(grid, -0.5 * sol.A[1]);

  const auto tw = twist_term(c, sol.K);
  f.coeff(1)[0] = Secular(grid, tw[0]);
  f.coeff(1)[1] = Secular(grid, tw[1]);
  f.coeff(1)[2] = Secular(grid, dot_hat_r(c, sol.A));

  const auto pois = poisson_term(c, sol.mat, sol.A);
  const auto memb = membrane_term(c, sol.mat, sol.B);
  const auto bend = bending_term(c, kernel_g(c, sol.mat, sol.A, sol.B, true));
  for (int a = 0; a < 2; ++a) f.coeff(0)[a] = Secular(grid, pois[a]) + memb[a] + bend[a];
  f.coeff(0)[2] = Secular(grid, sol.K * sol.phi);
  return f;
}

Vec3 ebt_displacement(const EBTSolution& sol, double s, double z) { return ebt_field(sol).value(s, z); }

std::vector<StressState> ebt_stress(const EBTSolution& sol) {
  const SectionCurve& c = sol.curve;
  const ShellMaterial& m = sol.mat;
  const std::size_t n = c.size();
  const Samples& k = c.curvature();
  std::vector<StressState> out(n);
  const double nsz = m.C * (1.0 - m.nu) * sol.K * c.area() / c.perimeter();
  const double msz = -m.D * (1.0 - m.nu) * sol.K;
  const double c1 = 1.0 - m.nu * m.nu;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 rh = c.hat_r(j);
    const Vec3 nrm = c.normal(j);
    const double bnr = sol.B.dot(nrm + k[j] * rh);
    StressState& s = out[j];
    s.N_ss = -bnr;
    s.N_sz = nsz;
    s.N_zz = m.C * c1 * sol.A.dot(rh) - m.nu * bnr;
    s.M_ss = -sol.B.dot(rh);
    s.M_zz = -m.D * c1 * sol.A.dot(nrm) - m.nu * sol.B.dot(rh);
    s.M_sz = msz;
  }
  const Samples zero(n, 0.0);
  return effective_tractions(std::move(out), zero, zero, c);
}

StressState interpolate_stress(const SectionCurve& curve, const std::vector<StressState>& nodes, double s) {
  const std::size_t n = curve.size();
  if (nodes.size() != n) throw GridMismatch("stress samples do not match the curve grid");
  constexpr int kFields = 12;
  double StressState::*members[kFields] = {
      &StressState::N_ss, &StressState::N_sz, &StressState::N_zz, &StressState::M_ss,
      &StressState::M_sz, &StressState::M_zz, &StressState::P_ss, &StressState::P_sz,
      &StressState::P_zs, &StressState::P_zz, &StressState::S_s,  &StressState::S_z};
  StressState out;
  Samples buf(n);
  for (auto member : members) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = nodes[j].*member;
    out.*member = curve.grid().interpolate(buf, s);
  }
  return out;
}

StressState ebt_stress(const EBTSolution& sol, double s) {
  return interpolate_stress(sol.curve, ebt_stress(sol), s);
}

}  // namespace ksv
