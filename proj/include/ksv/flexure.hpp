#pragma once

// Flexure of the tube: transverse end force, no end moment.

#include "ksv/ebt.hpp"

namespace ksv {

struct FlexureFunction {
  Secular psi{};
  double K0 = 0.0;
};

struct FlexureSolution {
  SectionCurve curve;
  ShellMaterial mat;
  Vec3 A_hat = Vec3::Zero();
  Vec3 B_hat = Vec3::Zero();
  double K_tilde = 0.0;
  double K0 = 0.0;
  Secular psi{};
  Samples phi{};
  Mat3 coupling = Mat3::Zero();
};

/// Throws NonTransverseLoad when the load has a moment or an axial force.
FlexureSolution solve_flexure(const SectionCurve& curve, const ShellMaterial& mat,
                              const ResultantLoads& loads);

/// psi by triple quadrature; K0 closes psi at the seam.
FlexureFunction flexure_function(const Vec3& A_hat, const Vec3& B_hat, const SectionCurve& curve,
                                 const ShellMaterial& mat);

/// Twist correction from the vanishing end torque.
double flexure_twist(const Vec3& A_hat, const Vec3& B_hat, double K0, const SectionCurve& curve,
                     const ShellMaterial& mat);

AxialPolynomialField flexure_field(const FlexureSolution& sol);
Vec3 flexure_displacement(const FlexureSolution& sol, double s, double z);

/// Closed-form stresses at the grid nodes for station z.
std::vector<StressState> flexure_stress(const FlexureSolution& sol, double z);
StressState flexure_stress(const FlexureSolution& sol, double s, double z);

}  // namespace ksv
