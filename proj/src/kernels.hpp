#pragma once

// Curve integrals shared by the exact and thin solvers.

#include <array>

#include "ksv/curve.hpp"
#include "ksv/field.hpp"
#include "ksv/shell.hpp"

namespace ksv::detail {

/// v . r_hat with r_hat = x_a e_a + perimeter e_3.
Samples dot_hat_r(const SectionCurve& curve, const Vec3& v);
Samples dot_normal(const SectionCurve& curve, const Vec3& v);
Samples dot_tangent(const SectionCurve& curve, const Vec3& v);
/// v . (r x e_3) = v_1 x_2 - v_2 x_1.
Samples dot_r_cross_e3(const SectionCurve& curve, const Vec3& v);
Samples r_dot_n(const SectionCurve& curve);
Samples r_dot_tau(const SectionCurve& curve);
Samples radius_squared(const SectionCurve& curve);

/// [(nu/R) a + (1/D + 1/(C R^2)) b] . r_hat; the 1/(C R^2) part only when exact.
Samples kernel_g(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& a, const Vec3& b,
                 bool exact);

/// -int_0^s n int_0^s g, in-plane components.
std::array<Secular, 2> bending_term(const SectionCurve& curve, const Samples& g);

/// (1/C) (s b x e_3 - int_0^s (1/R)(b . r_hat) tau), in-plane components.
std::array<Secular, 2> membrane_term(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& b);

/// (nu/2)|x|^2 a_alpha - nu (a . r_hat) x_alpha, in-plane components.
std::array<Samples, 2> poisson_term(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& a);

/// -k e_ab x_b e_a = -k (x_2, -x_1).
std::array<Samples, 2> twist_term(const SectionCurve& curve, double k);

inline Samples operator*(double a, Samples v) {
  for (double& x : v) x *= a;
  return v;
}

}  // namespace ksv::detail
