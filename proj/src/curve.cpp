#include "ksv/curve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <regex>

#include <unsupported/Eigen/FFT>

#include "ksv/errors.hpp"

namespace ksv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double coeff(const std::vector<double>& c, std::size_t k) { return k < c.size() ? c[k] : 0.0; }

// s(t) = (length / 2 pi) t + periodic part, from the Fourier series of |x'(t)|.
class ArcLengthMap {
 public:
  ArcLengthMap(const FourierCurveSpec& spec, std::size_t fine_n) : spec_(spec) {
    Samples speed(fine_n);
    double vmax = 0.0;
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fine_n; ++i) {
      const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(fine_n);
      speed[i] = spec.velocity(t).norm();
      vmax = std::max(vmax, speed[i]);
      vmin = std::min(vmin, speed[i]);
    }
    if (!(vmax > 0.0) || vmin <= 1e-10 * vmax) {
      throw DegenerateCurve("curve speed |dx/dt| vanishes (min " + std::to_string(vmin) + ")");
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec_c;
    fft.fwd(spec_c, speed);
    const double inv_n = 1.0 / static_cast<double>(fine_n);
    mean_speed_ = spec_c[0].real() * inv_n;
    std::size_t last = 0;
    for (std::size_t k = 1; k < fine_n / 2; ++k) {
      if (std::abs(spec_c[k]) * inv_n > 1e-18 * mean_speed_) last = k;
    }
    for (std::size_t k = 1; k <= last; ++k) {
      // Fourier coefficient of the periodic primitive: c_k / (i k).
      modes_.push_back(spec_c[k] * inv_n / std::complex<double>(0.0, static_cast<double>(k)));
    }
    offset_ = periodic(0.0);
  }

  double length() const { return kTwoPi * mean_speed_; }

  double operator()(double t) const { return mean_speed_ * t + periodic(t) - offset_; }

  double speed(double t) const { return spec_.velocity(t).norm(); }

  /// Solves s(t) = target for t in [lo, hi].
  double invert(double target, double lo, double hi) const {
    double t = std::clamp(target / mean_speed_, lo, hi);
    for (int it = 0; it < 100; ++it) {
      const double f = (*this)(t) - target;
      if (f > 0.0) hi = std::min(hi, t);
      else lo = std::max(lo, t);
      double next = t - f / speed(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-15 * kTwoPi) return next;
      t = next;
    }
    return t;
  }

 private:
  double periodic(double t) const {
    double acc = 0.0;
    const std::complex<double> step = std::polar(1.0, t);
    std::complex<double> rot = step;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      if (k % 32 == 31) rot = std::polar(1.0, t * static_cast<double>(k + 1));
      acc += 2.0 * (modes_[k] * rot).real();
      rot *= step;
    }
    return acc;
  }

  const FourierCurveSpec& spec_;
  double mean_speed_ = 0.0;
  double offset_ = 0.0;
  std::vector<std::complex<double>> modes_;
};

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0)) && d1 != 0.0 && d2 != 0.0 &&
         d3 != 0.0 && d4 != 0.0;
}

void check_simple(const FourierCurveSpec& spec) {
  const std::size_t p = std::max<std::size_t>(512, 64 * (spec.order() + 1));
  std::vector<Vec2> pts(p);
  for (std::size_t i = 0; i < p; ++i) {
    pts[i] = spec.position(kTwoPi * static_cast<double>(i) / static_cast<double>(p));
  }
  for (std::size_t i = 0; i < p; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % p];
    for (std::size_t k = i + 2; k < p; ++k) {
      if (i == 0 && k == p - 1) continue;
      if (segments_cross(a, b, pts[k], pts[(k + 1) % p])) {
        throw SelfIntersection("section curve intersects itself near t = " +
                               std::to_string(kTwoPi * static_cast<double>(i) / static_cast<double>(p)));
      }
    }
  }
}

}  // namespace

FourierCurveSpec FourierCurveSpec::circle(double radius) {
  FourierCurveSpec s;
  s.x1_cos = {0.0, radius};
  s.x1_sin = {0.0, 0.0};
  s.x2_cos = {0.0, 0.0};
  s.x2_sin = {0.0, radius};
  return s;
}

FourierCurveSpec FourierCurveSpec::ellipse(double a, double b) {
  FourierCurveSpec s;
  s.x1_cos = {0.0, a};
  s.x1_sin = {0.0, 0.0};
  s.x2_cos = {0.0, 0.0};
  s.x2_sin = {0.0, b};
  return s;
}

std::size_t FourierCurveSpec::order() const {
  const std::size_t n = std::max({x1_cos.size(), x1_sin.size(), x2_cos.size(), x2_sin.size()});
  return n == 0 ? 0 : n - 1;
}

Vec2 FourierCurveSpec::position(double t) const {
  Vec2 x = Vec2::Zero();
  for (std::size_t k = 0; k <= order(); ++k) {
    const double c = std::cos(static_cast<double>(k) * t);
    const double s = std::sin(static_cast<double>(k) * t);
    x.x() += coeff(x1_cos, k) * c + (k > 0 ? coeff(x1_sin, k) * s : 0.0);
    x.y() += coeff(x2_cos, k) * c + (k > 0 ? coeff(x2_sin, k) * s : 0.0);
  }
  return x;
}

Vec2 FourierCurveSpec::velocity(double t) const {
  Vec2 v = Vec2::Zero();
  for (std::size_t k = 1; k <= order(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = std::cos(kk * t);
    const double s = std::sin(kk * t);
    v.x() += kk * (-coeff(x1_cos, k) * s + coeff(x1_sin, k) * c);
    v.y() += kk * (-coeff(x2_cos, k) * s + coeff(x2_sin, k) * c);
  }
  return v;
}

Vec2 FourierCurveSpec::acceleration(double t) const {
  Vec2 a = Vec2::Zero();
  for (std::size_t k = 1; k <= order(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = std::cos(kk * t);
    const double s = std::sin(kk * t);
    a.x() -= kk * kk * (coeff(x1_cos, k) * c + coeff(x1_sin, k) * s);
    a.y() -= kk * kk * (coeff(x2_cos, k) * c + coeff(x2_sin, k) * s);
  }
  return a;
}

double FourierCurveSpec::signed_area() const {
  double acc = 0.0;
  for (std::size_t k = 1; k <= order(); ++k) {
    acc += static_cast<double>(k) *
           (coeff(x1_cos, k) * coeff(x2_sin, k) - coeff(x1_sin, k) * coeff(x2_cos, k));
  }
  return std::numbers::pi * acc;
}

FourierCurveSpec FourierCurveSpec::translated(const Vec2& offset) const {
  FourierCurveSpec out = *this;
  const std::size_t n = order() + 1;
  out.x1_cos.resize(n, 0.0);
  out.x2_cos.resize(n, 0.0);
  out.x1_sin.resize(n, 0.0);
  out.x2_sin.resize(n, 0.0);
  out.x1_cos[0] += offset.x();
  out.x2_cos[0] += offset.y();
  return out;
}

FourierCurveSpec FourierCurveSpec::rotated(double angle) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  FourierCurveSpec out;
  const std::size_t n = order() + 1;
  out.x1_cos.resize(n);
  out.x1_sin.resize(n);
  out.x2_cos.resize(n);
  out.x2_sin.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.x1_cos[k] = c * coeff(x1_cos, k) - s * coeff(x2_cos, k);
    out.x2_cos[k] = s * coeff(x1_cos, k) + c * coeff(x2_cos, k);
    out.x1_sin[k] = c * coeff(x1_sin, k) - s * coeff(x2_sin, k);
    out.x2_sin[k] = s * coeff(x1_sin, k) + c * coeff(x2_sin, k);
  }
  return out;
}

SectionCurve build_section(const FourierCurveSpec& spec, std::size_t grid_n) {
  if (grid_n < 64 || grid_n % 2 != 0) {
    throw GridTooCoarse("arc-length grid must be even and at least 64, got " + std::to_string(grid_n));
  }
  if (spec.order() == 0) throw DegenerateCurve("curve spec has no harmonics");

  std::size_t fine_n = std::max<std::size_t>({4 * grid_n, 1024, 64 * (spec.order() + 1)});
  fine_n += fine_n % 2;
  const ArcLengthMap arc(spec, fine_n);
  check_simple(spec);
  if (spec.signed_area() <= 0.0) {
    throw OrientationError("section curve is clockwise or encloses no area (signed area " +
                           std::to_string(spec.signed_area()) + ")");
  }

  SectionCurve c;
  c.spec_ = spec;
  c.grid_ = PeriodicGrid(grid_n, arc.length());
  const std::size_t n = grid_n;
  c.t_.resize(n);
  c.x1_.resize(n);
  c.x2_.resize(n);
  c.tau1_.resize(n);
  c.tau2_.resize(n);
  c.n1_.resize(n);
  c.n2_.resize(n);
  c.kappa_.resize(n);

  double lo = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = c.grid_.node(j);
    const double t = j == 0 ? 0.0 : arc.invert(target, lo, kTwoPi);
    lo = t;
    c.t_[j] = t;
    const Vec2 x = spec.position(t);
    const Vec2 v = spec.velocity(t);
    const Vec2 a = spec.acceleration(t);
    const double speed = v.norm();
    c.x1_[j] = x.x();
    c.x2_[j] = x.y();
    c.tau1_[j] = v.x() / speed;
    c.tau2_[j] = v.y() / speed;
    // n = e_ab x'_b e_a, outward for a counterclockwise curve.
    c.n1_[j] = c.tau2_[j];
    c.n2_[j] = -c.tau1_[j];
    c.kappa_[j] = cross(v, a) / (speed * speed * speed);
  }

  const double len = c.perimeter();
  c.centroid_ = Vec2(c.grid_.closed_integral(c.x1_), c.grid_.closed_integral(c.x2_)) / len;
  for (std::size_t j = 0; j < n; ++j) {
    c.x1_[j] -= c.centroid_.x();
    c.x2_[j] -= c.centroid_.y();
  }

  Samples rn(n), xx(n), xy(n), yy(n);
  for (std::size_t j = 0; j < n; ++j) {
    rn[j] = c.x1_[j] * c.n1_[j] + c.x2_[j] * c.n2_[j];
    xx[j] = c.x1_[j] * c.x1_[j];
    xy[j] = c.x1_[j] * c.x2_[j];
    yy[j] = c.x2_[j] * c.x2_[j];
  }
  c.area_ = 0.5 * c.grid_.closed_integral(rn);
  if (c.area_ <= 0.0) throw OrientationError("enclosed area is not positive");
  c.inertia_ << c.grid_.closed_integral(xx), c.grid_.closed_integral(xy), c.grid_.closed_integral(xy),
      c.grid_.closed_integral(yy);
  return c;
}

SectionProperties section_properties(const SectionCurve& curve) {
  return {curve.perimeter(), curve.area(), curve.centroid_offset(), curve.inertia(),
          curve.closed_integral(curve.curvature())};
}

Secular cumulative_integral(const SectionCurve& curve, const Samples& f) {
  return Secular(curve.grid(), f).integral();
}

Secular cumulative_integral(const SectionCurve& curve, const Secular& f) {
  if (f.grid().size() != curve.size()) throw GridMismatch("secular samples do not match curve grid");
  return f.integral();
}

double closed_integral(const SectionCurve& curve, const Samples& f) { return curve.closed_integral(f); }

FourierCurveSpec parse_builtin_section(const std::string& text) {
  static const std::regex circle(R"(\s*circle\s*\(\s*([-+0-9.eE]+)\s*\)\s*)");
  static const std::regex ellipse(R"(\s*ellipse\s*\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\)\s*)");
  std::smatch m;
  try {
    if (std::regex_match(text, m, circle)) {
      const double r = std::stod(m[1].str());
      if (!(r > 0.0)) throw ValidationError("section", "circle radius must be positive");
      return FourierCurveSpec::circle(r);
    }
    if (std::regex_match(text, m, ellipse)) {
      const double a = std::stod(m[1].str());
      const double b = std::stod(m[2].str());
      if (!(a > 0.0 && b > 0.0)) throw ValidationError("section", "ellipse semi-axes must be positive");
      return FourierCurveSpec::ellipse(a, b);
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw ParseError("unrecognised section '" + text + "' (expected circle(R0) or ellipse(a,b))", "section");
}

}  // namespace ksv
