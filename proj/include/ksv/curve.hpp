#pragma once

// Closed cross-section curves in arc-length form.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "ksv/spectral.hpp"

namespace ksv {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using VecSamples = std::vector<Vec3>;

/// x_a(t) = sum_k cos_a[k] cos(k t) + sin_a[k] sin(k t), t in [0, 2 pi).
/// Index 0 carries the constant offset; its sine entry is ignored.
struct FourierCurveSpec {
  std::vector<double> x1_cos, x1_sin, x2_cos, x2_sin;

  static FourierCurveSpec circle(double radius);
  static FourierCurveSpec ellipse(double a, double b);

  /// Highest harmonic index present.
  std::size_t order() const;
  Vec2 position(double t) const;
  Vec2 velocity(double t) const;
  Vec2 acceleration(double t) const;
  /// Signed enclosed area from the coefficients (positive when counterclockwise).
  double signed_area() const;

  FourierCurveSpec translated(const Vec2& offset) const;
  FourierCurveSpec rotated(double angle) const;
};

class SectionCurve;
SectionCurve build_section(const FourierCurveSpec& spec, std::size_t grid_n);

/// Uniform arc-length samples of a closed, simple, counterclockwise C^2 curve,
/// translated so that its line centroid sits at the origin. Immutable.
class SectionCurve {
 public:
  std::size_t size() const noexcept { return grid_.size(); }
  const PeriodicGrid& grid() const noexcept { return grid_; }
  double perimeter() const noexcept { return grid_.period(); }
  double area() const noexcept { return area_; }
  /// Line centroid of the input curve, i.e. the translation that was removed.
  const Vec2& centroid_offset() const noexcept { return centroid_; }
  /// I_ab = closed integral of x_a x_b ds about the centroid.
  const Mat2& inertia() const noexcept { return inertia_; }
  const FourierCurveSpec& spec() const noexcept { return spec_; }
  /// Curve parameter t of every arc-length node.
  const Samples& parameter() const noexcept { return t_; }

  const Samples& x1() const noexcept { return x1_; }
  const Samples& x2() const noexcept { return x2_; }
  const Samples& tangent1() const noexcept { return tau1_; }
  const Samples& tangent2() const noexcept { return tau2_; }
  const Samples& normal1() const noexcept { return n1_; }
  const Samples& normal2() const noexcept { return n2_; }
  /// Signed curvature 1/R.
  const Samples& curvature() const noexcept { return kappa_; }

  Vec3 position(std::size_t j) const { return {x1_[j], x2_[j], 0.0}; }
  Vec3 tangent(std::size_t j) const { return {tau1_[j], tau2_[j], 0.0}; }
  Vec3 normal(std::size_t j) const { return {n1_[j], n2_[j], 0.0}; }
  /// x_a e_a + perimeter e_3.
  Vec3 hat_r(std::size_t j) const { return {x1_[j], x2_[j], perimeter()}; }

  double closed_integral(const Samples& f) const { return grid_.closed_integral(f); }

 private:
  friend SectionCurve build_section(const FourierCurveSpec& spec, std::size_t grid_n);
  SectionCurve() = default;

  PeriodicGrid grid_;
  FourierCurveSpec spec_;
  Samples t_, x1_, x2_, tau1_, tau2_, n1_, n2_, kappa_;
  double area_ = 0.0;
  Vec2 centroid_ = Vec2::Zero();
  Mat2 inertia_ = Mat2::Zero();
};

struct SectionProperties {
  double perimeter;
  double area;
  Vec2 centroid;
  Mat2 inertia;
  double total_turning;
};

SectionProperties section_properties(const SectionCurve& curve);

/// F(s) = integral_0^s f, as an exact secular representation on the curve grid.
Secular cumulative_integral(const SectionCurve& curve, const Samples& f);
Secular cumulative_integral(const SectionCurve& curve, const Secular& f);
double closed_integral(const SectionCurve& curve, const Samples& f);

/// "circle(R0)" / "ellipse(a,b)" shorthand.
FourierCurveSpec parse_builtin_section(const std::string& text);

}  // namespace ksv
