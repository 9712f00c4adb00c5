#include "kernels.hpp"

namespace ksv::detail {

Samples dot_hat_r(const SectionCurve& curve, const Vec3& v) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v.dot(curve.hat_r(j));
  return out;
}

Samples dot_normal(const SectionCurve& curve, const Vec3& v) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v.dot(curve.normal(j));
  return out;
}

Samples dot_tangent(const SectionCurve& curve, const Vec3& v) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v.dot(curve.tangent(j));
  return out;
}

Samples dot_r_cross_e3(const SectionCurve& curve, const Vec3& v) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v[0] * curve.x2()[j] - v[1] * curve.x1()[j];
  return out;
}

Samples r_dot_n(const SectionCurve& curve) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = curve.position(j).dot(curve.normal(j));
  return out;
}

Samples r_dot_tau(const SectionCurve& curve) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = curve.position(j).dot(curve.tangent(j));
  return out;
}

Samples radius_squared(const SectionCurve& curve) {
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = curve.position(j).squaredNorm();
  return out;
}

Samples kernel_g(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& a, const Vec3& b,
                 bool exact) {
  const Samples& k = curve.curvature();
  Samples out(curve.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Vec3 rh = curve.hat_r(j);
    double bw = 1.0 / mat.D;
    if (exact) bw += k[j] * k[j] / mat.C;
    out[j] = mat.nu * k[j] * a.dot(rh) + bw * b.dot(rh);
  }
  return out;
}

std::array<Secular, 2> bending_term(const SectionCurve& curve, const Samples& g) {
  const Secular inner = cumulative_integral(curve, g);
  return {-1.0 * cumulative_integral(curve, inner * curve.normal1()),
          -1.0 * cumulative_integral(curve, inner * curve.normal2())};
}

std::array<Secular, 2> membrane_term(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& b) {
  const Samples& k = curve.curvature();
  Samples weight(curve.size());
  for (std::size_t j = 0; j < weight.size(); ++j) weight[j] = k[j] * b.dot(curve.hat_r(j));
  Samples w1(curve.size()), w2(curve.size());
  for (std::size_t j = 0; j < weight.size(); ++j) {
    w1[j] = weight[j] * curve.tangent1()[j];
    w2[j] = weight[j] * curve.tangent2()[j];
  }
  const Secular s = Secular::identity(curve.grid());
  Secular c1 = b[1] * s - cumulative_integral(curve, w1);
  Secular c2 = -b[0] * s - cumulative_integral(curve, w2);
  return {c1 * (1.0 / mat.C), c2 * (1.0 / mat.C)};
}

std::array<Samples, 2> poisson_term(const SectionCurve& curve, const ShellMaterial& mat, const Vec3& a) {
  std::array<Samples, 2> out{Samples(curve.size()), Samples(curve.size())};
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const double x1 = curve.x1()[j];
    const double x2 = curve.x2()[j];
    const double half = 0.5 * mat.nu * (x1 * x1 + x2 * x2);
    const double ar = a.dot(curve.hat_r(j));
    out[0][j] = half * a[0] - mat.nu * ar * x1;
    out[1][j] = half * a[1] - mat.nu * ar * x2;
  }
  return out;
}

std::array<Samples, 2> twist_term(const SectionCurve& curve, double k) {
  std::array<Samples, 2> out{Samples(curve.size()), Samples(curve.size())};
  for (std::size_t j = 0; j < curve.size(); ++j) {
    out[0][j] = -k * curve.x2()[j];
    out[1][j] = k * curve.x1()[j];
  }
  return out;
}

}  // namespace ksv::detail
