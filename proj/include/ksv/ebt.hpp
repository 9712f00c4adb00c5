#pragma once

// Extension, bending and torsion of the tube: axial end force and arbitrary
// end moments.

#include "ksv/curve.hpp"
#include "ksv/field.hpp"
#include "ksv/shell.hpp"

namespace ksv {

/// End-edge force and moment, both about the working origin.
struct ResultantLoads {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
};

/// Seam continuity system: ma * A + mb * B = 0. Rows are (alpha = 1, alpha = 2, axial).
struct ContinuityMatrices {
  Mat3 ma = Mat3::Zero();
  Mat3 mb = Mat3::Zero();
};

ContinuityMatrices continuity_matrices(const SectionCurve& curve, const ShellMaterial& mat);

/// L with B = L A, built column by column from the continuity system.
Mat3 coupling_matrix(const SectionCurve& curve, const ShellMaterial& mat);

/// End-resultant system after eliminating B: rows (alpha = 1, alpha = 2,
/// axial), right-hand side (M_2, -M_1, -R_3) for extension-bending.
Mat3 resultant_matrix(const SectionCurve& curve, const ShellMaterial& mat, const Mat3& coupling);

/// phi(s) = (2 area / perimeter) s - int_0^s r . n.
Samples torsion_function(const SectionCurve& curve);

/// 2 (1 - nu) (C area^2 / perimeter + D perimeter).
double torsional_rigidity(const SectionCurve& curve, const ShellMaterial& mat);

struct EBTSolution {
  SectionCurve curve;
  ShellMaterial mat;
  Vec3 A = Vec3::Zero();  ///< (A_1, A_2, A_3); the stretch is A_3 * perimeter
  Vec3 B = Vec3::Zero();
  double K = 0.0;
  Samples phi{};
  Mat3 coupling = Mat3::Zero();

  double A3_bar() const { return A[2] * curve.perimeter(); }
};

/// Throws NonAxialForce when the load has an in-plane force.
EBTSolution solve_ebt(const SectionCurve& curve, const ShellMaterial& mat, const ResultantLoads& loads);

/// Solution record from given constants, without any solve.
EBTSolution make_ebt_solution(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& A,
                              const Vec3& B, double K);

AxialPolynomialField ebt_field(const EBTSolution& sol);
Vec3 ebt_displacement(const EBTSolution& sol, double s, double z);

/// Closed-form stresses at the grid nodes; independent of z.
std::vector<StressState> ebt_stress(const EBTSolution& sol);
StressState ebt_stress(const EBTSolution& sol, double s);

/// Trigonometric interpolation of node stresses to an arbitrary s.
StressState interpolate_stress(const SectionCurve& curve, const std::vector<StressState>& nodes, double s);

}  // namespace ksv
