#pragma once

// Koiter shell kinematics and constitutive maps on the cylinder r(s, z).

#include <vector>

#include "ksv/curve.hpp"

namespace ksv {

struct ShellMaterial {
  double E = 0.0;
  double nu = 0.0;
  double h = 0.0;
  double C = 0.0;   ///< stretching stiffness E h / (1 - nu^2)
  double D = 0.0;   ///< bending stiffness E h^3 / (12 (1 - nu^2))
  double mu = 0.0;  ///< shear modulus E / (2 (1 + nu))
};

/// Validates E > 0, -1 < nu < 1/2, h > 0 and fills the derived stiffnesses.
ShellMaterial stiffnesses(double E, double nu, double h);

/// Change of metric (e_*) and change of curvature (r_*) in (s, z) components.
struct StrainState {
  double e_ss = 0.0, e_sz = 0.0, e_zz = 0.0;
  double r_ss = 0.0, r_sz = 0.0, r_zz = 0.0;
};

/// Stress and couple resultants plus the effective tractions of the
/// equilibrium equations. P_sz and P_zs differ in general.
struct StressState {
  double N_ss = 0.0, N_sz = 0.0, N_zz = 0.0;
  double M_ss = 0.0, M_sz = 0.0, M_zz = 0.0;
  double P_ss = 0.0, P_sz = 0.0, P_zs = 0.0, P_zz = 0.0;
  double S_s = 0.0, S_z = 0.0;
};

/// Isotropic law: fills N and M, leaves P and S zero.
StressState constitutive(const StrainState& strain, const ShellMaterial& mat);

/// P and S from N, M sampled on the curve grid. M_ss,s and M_sz,s are taken
/// spectrally; the z-slopes of M_zs and M_zz are supplied by the caller.
std::vector<StressState> effective_tractions(std::vector<StressState> nm, const Samples& dMzs_dz,
                                             const Samples& dMzz_dz, const SectionCurve& curve);

/// Strains from u and its first two z-derivatives on the curve grid; the
/// s-derivatives are spectral.
std::vector<StrainState> strains_from_jets(const VecSamples& u, const VecSamples& u_z,
                                           const VecSamples& u_zz, const SectionCurve& curve);

/// Strains at every station of an equally spaced set of z-stations (at least
/// five); z-derivatives by five-point finite differences.
std::vector<std::vector<StrainState>> strains_from_displacement(
    const std::vector<VecSamples>& u_by_station, double dz, const SectionCurve& curve);

}  // namespace ksv
