#pragma once

// Simplified solution for very thin tubes, h / perimeter -> 0. Accepts mixed
// loads: the extension-bending-torsion and flexure parts are superposed.

#include "ksv/ebt.hpp"

namespace ksv {

struct ThinFlexureFunction {
  Secular psi{};
  double K0 = 0.0;
  double K_tilde = 0.0;
};

struct ThinSolution {
  SectionCurve curve;
  ShellMaterial mat;
  Vec3 A = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  double K = 0.0;
  Vec3 A_hat = Vec3::Zero();
  Vec3 B_hat = Vec3::Zero();
  double K_tilde = 0.0;
  double K0 = 0.0;
  Secular psi{};
  Samples phi{};

  double A3_bar() const { return A[2] * curve.perimeter(); }
};

/// B from A through the reduced continuity relations.
Vec3 thin_coupling(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& A);

ThinSolution thin_coefficients(const SectionCurve& curve, const ShellMaterial& mat,
                               const ResultantLoads& loads);

ThinFlexureFunction thin_flexure_function(const Vec3& A_hat, const Vec3& B_hat, const SectionCurve& curve,
                                          const ShellMaterial& mat);

AxialPolynomialField thin_displacement_field(const ThinSolution& sol);
std::vector<StressState> thin_stress(const ThinSolution& sol, double z);

struct ThinFieldSample {
  Vec3 u;
  StressState stress;
};

ThinFieldSample thin_field(const ThinSolution& sol, double s, double z);

}  // namespace ksv
