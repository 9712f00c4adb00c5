#include "ksv/shell.hpp"

#include <cmath>
#include <string>

#include "ksv/errors.hpp"

namespace ksv {

ShellMaterial stiffnesses(double E, double nu, double h) {
  if (!(E > 0.0) || !std::isfinite(E)) throw InvalidMaterial("E", "Young modulus must be positive");
  if (!(nu > -1.0 && nu < 0.5)) throw InvalidMaterial("nu", "Poisson ratio must lie in (-1, 0.5)");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidMaterial("h", "thickness must be positive");
  ShellMaterial m;
  m.E = E;
  m.nu = nu;
  m.h = h;
  m.C = E * h / (1.0 - nu * nu);
  m.D = E * h * h * h / (12.0 * (1.0 - nu * nu));
  m.mu = E / (2.0 * (1.0 + nu));
  return m;
}

StressState constitutive(const StrainState& e, const ShellMaterial& m) {
  StressState s;
  s.N_ss = m.C * (e.e_ss + m.nu * e.e_zz);
  s.N_sz = m.C * (1.0 - m.nu) * e.e_sz;
  s.N_zz = m.C * (m.nu * e.e_ss + e.e_zz);
  s.M_ss = m.D * (e.r_ss + m.nu * e.r_zz);
  s.M_sz = m.D * (1.0 - m.nu) * e.r_sz;
  s.M_zz = m.D * (m.nu * e.r_ss + e.r_zz);
  return s;
}

std::vector<StressState> effective_tractions(std::vector<StressState> nm, const Samples& dMzs_dz,
                                             const Samples& dMzz_dz, const SectionCurve& curve) {
  const std::size_t n = curve.size();
  if (nm.size() != n || dMzs_dz.size() != n || dMzz_dz.size() != n) {
    throw GridMismatch("effective_tractions: field size differs from curve grid " + std::to_string(n));
  }
  Samples mss(n), msz(n);
  for (std::size_t j = 0; j < n; ++j) {
    mss[j] = nm[j].M_ss;
    msz[j] = nm[j].M_sz;
  }
  const Samples dmss = curve.grid().derivative(mss);
  const Samples dmsz = curve.grid().derivative(msz);
  const Samples& k = curve.curvature();
  for (std::size_t j = 0; j < n; ++j) {
    StressState& s = nm[j];
    s.P_ss = s.N_ss - k[j] * s.M_ss;
    s.P_sz = s.N_sz - k[j] * s.M_sz;
    s.P_zs = s.N_sz;
    s.P_zz = s.N_zz;
    s.S_s = -dmss[j] - dMzs_dz[j];
    s.S_z = -dmsz[j] - dMzz_dz[j];
  }
  return nm;
}

namespace {

std::array<Samples, 3> components(const VecSamples& u) {
  std::array<Samples, 3> c;
  for (auto& v : c) v.resize(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    for (int i = 0; i < 3; ++i) c[i][j] = u[j][i];
  }
  return c;
}

VecSamples derivative(const VecSamples& u, const SectionCurve& curve, int order) {
  auto c = components(u);
  for (auto& v : c) v = curve.grid().derivative(v, order);
  VecSamples out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = Vec3(c[0][j], c[1][j], c[2][j]);
  return out;
}

}  // namespace

std::vector<StrainState> strains_from_jets(const VecSamples& u, const VecSamples& u_z,
                                           const VecSamples& u_zz, const SectionCurve& curve) {
  const std::size_t n = curve.size();
  if (u.size() != n || u_z.size() != n || u_zz.size() != n) {
    throw GridMismatch("strains_from_jets: displacement samples do not match the curve grid");
  }
  const VecSamples u_s = derivative(u, curve, 1);
  const VecSamples u_ss = derivative(u, curve, 2);
  const VecSamples u_sz = derivative(u_z, curve, 1);
  std::vector<StrainState> out(n);
  const Vec3 e3(0.0, 0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3 tau = curve.tangent(j);
    const Vec3 nrm = curve.normal(j);
    StrainState& e = out[j];
    e.e_ss = u_s[j].dot(tau);
    e.e_sz = 0.5 * (u_z[j].dot(tau) + u_s[j].dot(e3));
    e.e_zz = u_z[j].dot(e3);
    e.r_ss = u_ss[j].dot(nrm);
    e.r_sz = u_sz[j].dot(nrm);
    e.r_zz = u_zz[j].dot(nrm);
  }
  return out;
}

std::vector<std::vector<StrainState>> strains_from_displacement(
    const std::vector<VecSamples>& u_by_station, double dz, const SectionCurve& curve) {
  const std::size_t nz = u_by_station.size();
  if (nz < 5) {
    throw TooFewZStations("strains_from_displacement needs at least 5 z-stations, got " +
                          std::to_string(nz));
  }
  if (!(dz > 0.0)) throw TooFewZStations("z-station spacing must be positive");
  for (const auto& u : u_by_station) {
    if (u.size() != curve.size()) throw GridMismatch("displacement station does not match the curve grid");
  }
  std::vector<std::vector<StrainState>> out;
  out.reserve(nz);
  for (std::size_t i = 0; i < nz; ++i) {
    // Five nearest stations, centred where possible.
    const std::size_t first = std::min(i >= 2 ? i - 2 : 0, nz - 5);
    std::vector<double> xs(5);
    for (std::size_t k = 0; k < 5; ++k) xs[k] = static_cast<double>(first + k) * dz;
    const auto w = finite_difference_weights(static_cast<double>(i) * dz, xs, 2);
    VecSamples u_z(curve.size(), Vec3::Zero());
    VecSamples u_zz(curve.size(), Vec3::Zero());
    for (std::size_t k = 0; k < 5; ++k) {
      const VecSamples& u = u_by_station[first + k];
      for (std::size_t j = 0; j < curve.size(); ++j) {
        u_z[j] += w[1][k] * u[j];
        u_zz[j] += w[2][k] * u[j];
      }
    }
    out.push_back(strains_from_jets(u_by_station[i], u_z, u_zz, curve));
  }
  return out;
}

}  // namespace ksv
