#include "ksv/verification.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "ksv/errors.hpp"

namespace ksv {

double moment_arm(const SectionCurve& curve) { return curve.perimeter() / (2.0 * std::numbers::pi); }

namespace {

double stencil_step(const FieldEvaluator& field, const SectionCurve& curve) {
  const double rho = moment_arm(curve);
  return field.z_degree >= 0 && field.z_degree <= 4 ? rho : 0.05 * rho;
}

void check_size(const VecSamples& u, const SectionCurve& curve) {
  if (u.size() != curve.size()) {
    throw GridMismatch("field has " + std::to_string(u.size()) + " samples, curve grid has " +
                       std::to_string(curve.size()));
  }
}

// Stresses of the m-th z-derivative of the field, m = 0, 1, 2.
std::array<std::vector<StressState>, 3> stress_jet(const ZJet& jet, const SectionCurve& curve,
                                                   const ShellMaterial& mat) {
  std::array<std::vector<StressState>, 3> out;
  for (std::size_t m = 0; m < 3; ++m) {
    const auto strain = strains_from_jets(jet[m], jet[m + 1], jet[m + 2], curve);
    out[m].resize(strain.size());
    for (std::size_t j = 0; j < strain.size(); ++j) out[m][j] = constitutive(strain[j], mat);
  }
  return out;
}

Samples pick(const std::vector<StressState>& s, double StressState::*member) {
  Samples out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out[j] = s[j].*member;
  return out;
}

}  // namespace

ZJet z_jet(const FieldEvaluator& field, const SectionCurve& curve, double z) {
  const double step = stencil_step(field, curve);
  std::vector<double> xs(5);
  for (int k = 0; k < 5; ++k) xs[k] = (k - 2) * step;
  const auto w = finite_difference_weights(0.0, xs, 4);
  std::array<VecSamples, 5> samples;
  for (int k = 0; k < 5; ++k) {
    samples[k] = field.sample(z + xs[k]);
    check_size(samples[k], curve);
  }
  ZJet jet;
  for (int order = 0; order < 5; ++order) {
    jet[order].assign(curve.size(), Vec3::Zero());
    if (order > field.z_degree && field.z_degree >= 0) continue;
    if (order == 0) {
      jet[0] = samples[2];
      continue;
    }
    for (int k = 0; k < 5; ++k) {
      for (std::size_t j = 0; j < curve.size(); ++j) jet[order][j] += w[order][k] * samples[k][j];
    }
  }
  return jet;
}

FieldEvaluator z_derivative(const FieldEvaluator& field, const SectionCurve& curve) {
  const double step = stencil_step(field, curve);
  std::vector<double> xs(5);
  for (int k = 0; k < 5; ++k) xs[k] = (k - 2) * step;
  const auto w = finite_difference_weights(0.0, xs, 1);
  FieldEvaluator out;
  out.z_degree = field.z_degree > 0 ? field.z_degree - 1 : field.z_degree;
  out.sample = [field, xs, w1 = w[1]](double z) {
    VecSamples acc;
    for (int k = 0; k < 5; ++k) {
      const VecSamples u = field.sample(z + xs[k]);
      if (acc.empty()) acc.assign(u.size(), Vec3::Zero());
      for (std::size_t j = 0; j < u.size(); ++j) acc[j] += w1[k] * u[j];
    }
    return acc;
  };
  return out;
}

std::vector<StressState> derived_stresses(const FieldEvaluator& field, const SectionCurve& curve,
                                          const ShellMaterial& mat, double z) {
  const auto nm = stress_jet(z_jet(field, curve, z), curve, mat);
  return effective_tractions(nm[0], pick(nm[1], &StressState::M_sz), pick(nm[1], &StressState::M_zz), curve);
}

EquilibriumResidual equilibrium_residual(const FieldEvaluator& field, const SectionCurve& curve,
                                         const ShellMaterial& mat, const std::vector<double>& z_stations) {
  EquilibriumResidual out;
  const PeriodicGrid& grid = curve.grid();
  const Samples& k = curve.curvature();
  const std::size_t n = curve.size();
  std::array<double, 3> sumsq{};
  std::size_t count = 0;
  for (double z : z_stations) {
    const auto nm = stress_jet(z_jet(field, curve, z), curve, mat);
    const auto& s0 = nm[0];
    const auto& s1 = nm[1];
    const auto& s2 = nm[2];
    const Samples mss = pick(s0, &StressState::M_ss);
    const Samples msz = pick(s0, &StressState::M_sz);
    const Samples msz1 = pick(s1, &StressState::M_sz);
    const Samples dmss = grid.derivative(mss);
    const Samples dmsz1 = grid.derivative(msz1);
    Samples pss(n), ss(n);
    for (std::size_t j = 0; j < n; ++j) {
      pss[j] = s0[j].N_ss - k[j] * s0[j].M_ss;
      ss[j] = -dmss[j] - s1[j].M_sz;
    }
    const Samples dpss = grid.derivative(pss);
    const Samples dss = grid.derivative(ss);
    const Samples dnsz = grid.derivative(pick(s0, &StressState::N_sz));
    const Samples dmsz = grid.derivative(msz);
    for (std::size_t j = 0; j < n; ++j) {
      const double psz_z = s1[j].N_sz - k[j] * s1[j].M_sz;
      const double sz_z = -dmsz1[j] - s2[j].M_zz;
      const double sz = -dmsz[j] - s1[j].M_zz;
      const std::array<double, 3> e = {dpss[j] + psz_z + k[j] * ss[j], dnsz[j] + s1[j].N_zz,
                                       dss[j] + sz_z - k[j] * pss[j]};
      for (int i = 0; i < 3; ++i) {
        out.max[i] = std::max(out.max[i], std::abs(e[i]));
        sumsq[i] += e[i] * e[i];
      }
      const double rho = moment_arm(curve);
      for (double v : {s0[j].N_ss, s0[j].N_sz, s0[j].N_zz, s0[j].M_ss / rho, s0[j].M_sz / rho,
                       s0[j].M_zz / rho, ss[j], sz}) {
        out.stress_scale = std::max(out.stress_scale, std::abs(v));
      }
    }
    count += n;
  }
  for (int i = 0; i < 3; ++i) out.l2[i] = count ? std::sqrt(sumsq[i] / static_cast<double>(count)) : 0.0;
  const double worst = *std::max_element(out.max.begin(), out.max.end());
  if (out.stress_scale > 0.0) out.relative = worst * moment_arm(curve) / out.stress_scale;
  return out;
}

Resultants end_resultants(const FieldEvaluator& field, const SectionCurve& curve, const ShellMaterial& mat,
                          double z0, ResultantForm form) {
  const std::size_t n = curve.size();
  const double h = curve.grid().spacing();
  const Vec3 e3(0.0, 0.0, 1.0);
  Resultants out;
  if (form == ResultantForm::Reduced) {
    const auto nm = stress_jet(z_jet(field, curve, z0), curve, mat);
    for (std::size_t j = 0; j < n; ++j) {
      const StressState& s = nm[0][j];
      const double mzz_z = nm[1][j].M_zz;
      const Vec3 x = curve.position(j);
      const Vec3 tau = curve.tangent(j);
      const Vec3 nrm = curve.normal(j);
      out.force -= h * (s.N_sz * tau + s.N_zz * e3 - mzz_z * nrm);
      out.moment -= h * (s.N_zz * x.cross(e3) + s.M_zz * tau +
                         (s.N_sz * x.dot(nrm) - 2.0 * s.M_sz + mzz_z * x.dot(tau)) * e3);
    }
    out.moment += z0 * e3.cross(out.force);
    return out;
  }
  const auto st = derived_stresses(field, curve, mat, z0);
  for (std::size_t j = 0; j < n; ++j) {
    const StressState& s = st[j];
    const Vec3 r = curve.position(j) + z0 * e3;
    const Vec3 t = s.P_sz * curve.tangent(j) + s.P_zz * e3 + s.S_z * curve.normal(j);
    out.force -= h * t;
    out.moment -= h * (r.cross(t) - s.M_sz * e3 + s.M_zz * curve.tangent(j));
  }
  return out;
}

double resultant_error(const Resultants& got, const ResultantLoads& want, const SectionCurve& curve) {
  const double rho = moment_arm(curve);
  const double err = (got.force - want.force).norm() * rho + (got.moment - want.moment).norm();
  const double scale = want.force.norm() * rho + want.moment.norm();
  return scale > 0.0 ? err / scale : err;
}

SeamDefects continuity_check(const AxialPolynomialField& field, const std::vector<double>& z_stations) {
  SeamDefects out;
  const double period = field.grid().period();
  std::array<AxialPolynomialField, 3> d{field, field.s_derivative(), AxialPolynomialField()};
  d[2] = d[1].s_derivative();
  for (int k = 0; k < 3; ++k) {
    double scale = 0.0;
    for (double z : z_stations) {
      const Vec3 gap = d[k].value(0.0, z) - d[k].value(period, z);
      out.absolute[k] = std::max(out.absolute[k], gap.cwiseAbs().maxCoeff());
      for (const Vec3& v : d[k].sample(z)) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    }
    out.relative[k] = scale > 0.0 ? out.absolute[k] / scale : out.absolute[k];
  }
  return out;
}

BalanceDefect global_balance(const FieldEvaluator& field, const SectionCurve& curve, const ShellMaterial& mat,
                             double length) {
  if (!(length > 0.0)) throw ValidationError("length", "tube length must be positive");
  BalanceDefect out;
  out.start = end_resultants(field, curve, mat, 0.0);
  out.end = end_resultants(field, curve, mat, length);
  const double rho = moment_arm(curve);
  const double err = (out.end.force - out.start.force).norm() * rho + (out.end.moment - out.start.moment).norm();
  const double scale = std::max(out.start.force.norm() * rho + out.start.moment.norm(),
                                out.end.force.norm() * rho + out.end.moment.norm());
  out.relative = scale > 0.0 ? err / scale : err;
  return out;
}

StrainDiagnostic strain_diagnostic(const FieldEvaluator& field, const SectionCurve& curve,
                                   const ShellMaterial& mat, const std::vector<double>& z_stations) {
  StrainDiagnostic out;
  for (double z : z_stations) {
    const ZJet jet = z_jet(field, curve, z);
    for (const StrainState& e : strains_from_jets(jet[0], jet[1], jet[2], curve)) {
      const double eps = std::sqrt(e.e_ss * e.e_ss + 2.0 * e.e_sz * e.e_sz + e.e_zz * e.e_zz);
      const double rho = std::sqrt(e.r_ss * e.r_ss + 2.0 * e.r_sz * e.r_sz + e.r_zz * e.r_zz);
      out.max_metric = std::max(out.max_metric, eps);
      out.h_max_curvature = std::max(out.h_max_curvature, mat.h * rho);
    }
  }
  out.ratio = out.h_max_curvature > 0.0 ? out.max_metric / out.h_max_curvature : 0.0;
  return out;
}

ResidualReport verify_field(const FieldEvaluator& field, const AxialPolynomialField* poly,
                            const SectionCurve& curve, const ShellMaterial& mat, const ResultantLoads& loads,
                            double length, const std::vector<double>& z_stations) {
  ResidualReport r;
  r.grid_s = curve.size();
  r.z_stations = z_stations;
  r.equilibrium = equilibrium_residual(field, curve, mat, z_stations);
  r.resultants = end_resultants(field, curve, mat, 0.0);
  r.resultant_relative = resultant_error(r.resultants, loads, curve);
  if (poly != nullptr) {
    r.has_seams = true;
    r.seams = continuity_check(*poly, z_stations);
  }
  r.balance = global_balance(field, curve, mat, length);
  r.strain = strain_diagnostic(field, curve, mat, z_stations);
  return r;
}

std::vector<double> stations(double length, std::size_t count) {
  std::vector<double> out;
  if (count <= 1) return {0.0};
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(length * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

}  // namespace ksv
