#pragma once

// Independent certification of candidate displacement fields. Stresses are
// rebuilt from the displacement through the strain and constitutive maps,
// never taken from a solver's closed-form stress expressions.

#include <array>
#include <vector>

#include "ksv/ebt.hpp"
#include "ksv/field.hpp"
#include "ksv/shell.hpp"

namespace ksv {

/// u and its first four z-derivatives on the curve grid at one station.
using ZJet = std::array<VecSamples, 5>;

/// Exact for declared degree <= 4 (wide five-point stencil), otherwise
/// central differences with a small step.
ZJet z_jet(const FieldEvaluator& field, const SectionCurve& curve, double z);

/// Numerical z-derivative of a field by five-point central differences.
FieldEvaluator z_derivative(const FieldEvaluator& field, const SectionCurve& curve);

/// N, M, P and S at station z rebuilt from the displacement.
std::vector<StressState> derived_stresses(const FieldEvaluator& field, const SectionCurve& curve,
                                          const ShellMaterial& mat, double z);

struct EquilibriumResidual {
  std::array<double, 3> max{};  ///< per equation, force / length^2
  std::array<double, 3> l2{};
  double stress_scale = 0.0;    ///< max of |N|, |M| / rho, |S|
  double relative = 0.0;        ///< max residual / (stress_scale / rho)
};

EquilibriumResidual equilibrium_residual(const FieldEvaluator& field, const SectionCurve& curve,
                                         const ShellMaterial& mat, const std::vector<double>& z_stations);

struct Resultants {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
};

/// Reduced: membrane and couple resultants only. Traction: effective
/// tractions including S_z.
enum class ResultantForm { Reduced, Traction };

/// Resultant force and moment (about the origin) transmitted through the
/// section at z0.
Resultants end_resultants(const FieldEvaluator& field, const SectionCurve& curve, const ShellMaterial& mat,
                          double z0, ResultantForm form = ResultantForm::Reduced);

/// Length scale rho = perimeter / (2 pi) used to combine forces and moments.
double moment_arm(const SectionCurve& curve);

/// (|dR| rho + |dM|) / (|R0| rho + |M0|); absolute combined error when the
/// prescribed loads vanish.
double resultant_error(const Resultants& got, const ResultantLoads& want, const SectionCurve& curve);

struct SeamDefects {
  std::array<double, 3> absolute{};  ///< u, u_s, u_ss
  std::array<double, 3> relative{};
};

SeamDefects continuity_check(const AxialPolynomialField& field, const std::vector<double>& z_stations);

struct BalanceDefect {
  Resultants start;
  Resultants end;
  double relative = 0.0;
};

BalanceDefect global_balance(const FieldEvaluator& field, const SectionCurve& curve, const ShellMaterial& mat,
                             double length);

/// Strong-extension indicator: max ||eps|| against h max ||rho||.
struct StrainDiagnostic {
  double max_metric = 0.0;
  double h_max_curvature = 0.0;
  double ratio = 0.0;
};

StrainDiagnostic strain_diagnostic(const FieldEvaluator& field, const SectionCurve& curve,
                                   const ShellMaterial& mat, const std::vector<double>& z_stations);

struct ResidualReport {
  std::size_t grid_s = 0;
  std::vector<double> z_stations;
  EquilibriumResidual equilibrium;
  Resultants resultants;
  double resultant_relative = 0.0;
  bool has_seams = false;
  SeamDefects seams;
  BalanceDefect balance;
  StrainDiagnostic strain;
};

/// Full suite. Seam defects need the polynomial representation; pass nullptr
/// to skip them.
ResidualReport verify_field(const FieldEvaluator& field, const AxialPolynomialField* poly,
                            const SectionCurve& curve, const ShellMaterial& mat, const ResultantLoads& loads,
                            double length, const std::vector<double>& z_stations);

/// Equally spaced stations covering [0, length].
std::vector<double> stations(double length, std::size_t count);

}  // namespace ksv
