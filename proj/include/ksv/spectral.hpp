#pragma once

// Spectral calculus on a uniform periodic grid.
//
// Functions on the closed section are sampled at s_j = j * period / n,
// j = 0..n-1. Smooth periodic samples are differentiated, integrated and
// interpolated through their discrete Fourier series. Repeated integration
// of periodic data produces secular growth (terms like s * p(s)), which the
// Secular class keeps exact by carrying one periodic factor per power of s.

#include <cstddef>
#include <vector>

namespace ksv {

using Samples = std::vector<double>;

class PeriodicGrid {
 public:
  PeriodicGrid() = default;
  PeriodicGrid(std::size_t n, double period);

  std::size_t size() const noexcept { return n_; }
  double period() const noexcept { return period_; }
  double spacing() const noexcept { return period_ / static_cast<double>(n_); }
  double node(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }
  Samples nodes() const;

  /// Periodic trapezoid rule; spectrally accurate for smooth periodic f.
  double closed_integral(const Samples& f) const;
  double mean(const Samples& f) const;

  /// order-th derivative through the Fourier series. The Nyquist mode is
  /// dropped for odd orders.
  Samples derivative(const Samples& f, int order = 1) const;

  /// Periodic antiderivative of the zero-mean part of f, normalised to 0 at
  /// s = 0. The mean contributes mean * s, which callers add themselves.
  Samples periodic_antiderivative(const Samples& f) const;

  /// Trigonometric interpolant of f evaluated at arbitrary s.
  double interpolate(const Samples& f, double s) const;

  /// Trigonometric interpolant of f sampled on a grid of m nodes over the
  /// same period (zero padding or truncation of the spectrum).
  Samples resample(const Samples& f, std::size_t m) const;

 private:
  void check(const Samples& f) const;

  std::size_t n_ = 0;
  double period_ = 0.0;
};

/// f(s) = sum_k s^k p_k(s) with periodic p_k sampled on a PeriodicGrid.
class Secular {
 public:
  Secular() = default;
  explicit Secular(PeriodicGrid grid);
  Secular(PeriodicGrid grid, Samples periodic);
  static Secular constant(PeriodicGrid grid, double value);
  /// The function s itself.
  static Secular identity(PeriodicGrid grid);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t degree() const noexcept { return terms_.empty() ? 0 : terms_.size() - 1; }
  const std::vector<Samples>& terms() const noexcept { return terms_; }

  /// Value at node j (0 <= j < n).
  double at_node(std::size_t j) const;
  /// Value at arbitrary s in [0, period]; s = period is the one-sided limit
  /// of the periodic factors continued past the seam.
  double value(double s) const;
  double end_value() const;
  Samples to_samples() const;

  Secular derivative() const;
  /// Antiderivative vanishing at s = 0, exact for the represented function.
  Secular integral() const;
  /// Integral over [0, period].
  double definite_integral() const;

  Secular resample(std::size_t m) const;

  Secular& operator+=(const Secular& other);
  Secular& operator-=(const Secular& other);
  Secular& operator*=(double a);
  Secular& operator*=(const Samples& periodic);

  friend Secular operator+(Secular a, const Secular& b) { return a += b; }
  friend Secular operator-(Secular a, const Secular& b) { return a -= b; }
  friend Secular operator*(Secular a, double c) { return a *= c; }
  friend Secular operator*(double c, Secular a) { return a *= c; }
  friend Secular operator*(Secular a, const Samples& p) { return a *= p; }
  friend Secular operator*(const Samples& p, Secular a) { return a *= p; }
  friend Secular operator*(const Secular& a, const Secular& b);
  Secular operator-() const { return *this * -1.0; }

 private:
  void trim();
  Samples& term(std::size_t k);

  PeriodicGrid grid_;
  std::vector<Samples> terms_;
};

/// Classical Fornberg weights for the derivatives 0..max_order at x0 using
/// the stencil points xs. Returns weights[order][point].
std::vector<std::vector<double>> finite_difference_weights(double x0, const std::vector<double>& xs,
                                                           int max_order);

}  // namespace ksv
