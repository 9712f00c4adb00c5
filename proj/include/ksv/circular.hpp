#pragma once

// Closed-form solution for circular tubes, used as the reference for the
// general pipeline.

#include <string>

#include "ksv/ebt.hpp"

namespace ksv {

/// Axial flexure coefficient of the circular solution: the corollary form
/// 2 (1 + nu) R0^2 or the flexure-function form (4 + 3 nu) / 2 R0^2.
enum class PsiVariant { Corollary, FlexureFunction };

std::string to_string(PsiVariant v);
PsiVariant parse_psi_variant(const std::string& text);

struct CircularCase {
  double R0 = 1.0;
  ShellMaterial mat;
  ResultantLoads loads;
  double perimeter = 0.0;
  double area = 0.0;
  double inertia = 0.0;  ///< I_11 = I_22
  double K = 0.0;
  Vec3 A = Vec3::Zero();      ///< (A_1, A_2, A_3) with A_3 = stretch / perimeter
  double A3_bar = 0.0;
  Vec3 A_hat = Vec3::Zero();  ///< A_hat_3 = 0
  Vec3 B = Vec3::Zero();
  Vec3 B_hat = Vec3::Zero();
  double K_tilde = 0.0;
  double K0 = 0.0;
};

CircularCase circle_coefficients(double R0, const ShellMaterial& mat, const ResultantLoads& loads);

double psi_coefficient(const CircularCase& c, PsiVariant variant);

Vec3 circle_displacement(const CircularCase& c, double s, double z, PsiVariant variant);

/// Samples the circular field at the nodes of a circle curve of radius R0.
FieldEvaluator circle_evaluator(const CircularCase& c, const SectionCurve& curve, PsiVariant variant);

}  // namespace ksv
