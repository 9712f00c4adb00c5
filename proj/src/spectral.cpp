#include "ksv/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "ksv/errors.hpp"

namespace ksv {

namespace {

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(const Samples& f) {
  Eigen::FFT<double> fft;
  Spectrum out;
  fft.fwd(out, f);
  return out;
}

Samples inverse(Spectrum spec) {
  Eigen::FFT<double> fft;
  Samples out;
  fft.inv(out, spec);
  return out;
}

// Signed wavenumber of FFT bin k on an n-point grid; the Nyquist bin maps to +n/2.
long wavenumber(std::size_t k, std::size_t n) {
  const auto kk = static_cast<long>(k);
  const auto nn = static_cast<long>(n);
  return kk <= nn / 2 ? kk : kk - nn;
}

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t n, double period) : n_(n), period_(period) {
  if (n < 2 || n % 2 != 0) {
    throw GridTooCoarse("periodic grid needs an even number of nodes, got " + std::to_string(n));
  }
  if (!(period > 0.0)) throw DegenerateCurve("periodic grid needs a positive period");
}

Samples PeriodicGrid::nodes() const {
  Samples s(n_);
  for (std::size_t j = 0; j < n_; ++j) s[j] = node(j);
  return s;
}

void PeriodicGrid::check(const Samples& f) const {
  if (f.size() != n_) {
    throw GridMismatch("sample count " + std::to_string(f.size()) + " does not match grid size " +
                       std::to_string(n_));
  }
}

double PeriodicGrid::closed_integral(const Samples& f) const {
  check(f);
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum * spacing();
}

double PeriodicGrid::mean(const Samples& f) const { return closed_integral(f) / period_; }

Samples PeriodicGrid::derivative(const Samples& f, int order) const {
  check(f);
  if (order == 0) return f;
  Spectrum spec = forward(f);
  const double omega = 2.0 * std::numbers::pi / period_;
  for (std::size_t k = 0; k < n_; ++k) {
    const long m = wavenumber(k, n_);
    if (k == n_ / 2 && order % 2 != 0) {
      spec[k] = 0.0;
      continue;
    }
    spec[k] *= std::pow(std::complex<double>(0.0, static_cast<double>(m) * omega), order);
  }
  return inverse(std::move(spec));
}

Samples PeriodicGrid::periodic_antiderivative(const Samples& f) const {
  check(f);
  Spectrum spec = forward(f);
  const double omega = 2.0 * std::numbers::pi / period_;
  spec[0] = 0.0;
  spec[n_ / 2] = 0.0;
  for (std::size_t k = 1; k < n_; ++k) {
    if (k == n_ / 2) continue;
    const long m = wavenumber(k, n_);
    spec[k] /= std::complex<double>(0.0, static_cast<double>(m) * omega);
  }
  Samples out = inverse(std::move(spec));
  const double origin = out[0];
  for (double& v : out) v -= origin;
  return out;
}

double PeriodicGrid::interpolate(const Samples& f, double s) const {
  check(f);
  const Spectrum spec = forward(f);
  const double omega = 2.0 * std::numbers::pi / period_;
  const double theta = omega * std::fmod(s, period_);
  double acc = spec[0].real();
  for (std::size_t k = 1; k < n_ / 2; ++k) {
    const double a = theta * static_cast<double>(k);
    acc += 2.0 * (spec[k].real() * std::cos(a) - spec[k].imag() * std::sin(a));
  }
  acc += spec[n_ / 2].real() * std::cos(theta * static_cast<double>(n_ / 2));
  return acc / static_cast<double>(n_);
}

Samples PeriodicGrid::resample(const Samples& f, std::size_t m) const {
  check(f);
  if (m == n_) return f;
  if (m < 2 || m % 2 != 0) throw GridMismatch("resampling target must be even");
  const Spectrum spec = forward(f);
  Spectrum out(m, {0.0, 0.0});
  const std::size_t half = std::min(n_, m) / 2;
  for (std::size_t k = 0; k < half; ++k) out[k] = spec[k];
  for (std::size_t k = 1; k < half; ++k) out[m - k] = spec[n_ - k];
  if (m > n_) {
    out[half] = 0.5 * spec[half];
    out[m - half] += 0.5 * spec[half];
  } else {
    out[half] = {(spec[half] + spec[n_ - half]).real(), 0.0};
  }
  const double scale = static_cast<double>(m) / static_cast<double>(n_);
  for (auto& c : out) c *= scale;
  return inverse(std::move(out));
}

// ---------------------------------------------------------------------------

Secular::Secular(PeriodicGrid grid) : grid_(grid), terms_{Samples(grid.size(), 0.0)} {}

Secular::Secular(PeriodicGrid grid, Samples periodic) : grid_(grid) {
  if (periodic.size() != grid.size()) {
    throw GridMismatch("secular term has " + std::to_string(periodic.size()) +
                       " samples, grid has " + std::to_string(grid.size()));
  }
  terms_.push_back(std::move(periodic));
}

Secular Secular::constant(PeriodicGrid grid, double value) {
  return Secular(grid, Samples(grid.size(), value));
}

Secular Secular::identity(PeriodicGrid grid) {
  Secular out(grid);
  out.term(1).assign(grid.size(), 1.0);
  return out;
}

Samples& Secular::term(std::size_t k) {
  while (terms_.size() <= k) terms_.emplace_back(grid_.size(), 0.0);
  return terms_[k];
}

void Secular::trim() {
  while (terms_.size() > 1) {
    bool zero = true;
    for (double v : terms_.back()) {
      if (v != 0.0) {
        zero = false;
        break;
      }
    }
    if (!zero) break;
    terms_.pop_back();
  }
}

double Secular::at_node(std::size_t j) const {
  const double s = grid_.node(j);
  double acc = 0.0;
  double power = 1.0;
  for (const auto& p : terms_) {
    acc += power * p[j];
    power *= s;
  }
  return acc;
}

double Secular::value(double s) const {
  const double h = grid_.spacing();
  const double r = s / h;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) < 1e-12) {
    // Nodes, including s = period, avoid the interpolation sum.
    const auto j = static_cast<std::size_t>(nearest) % grid_.size();
    double acc = 0.0;
    double power = 1.0;
    for (const auto& p : terms_) {
      acc += power * p[j];
      power *= s;
    }
    return acc;
  }
  double acc = 0.0;
  double power = 1.0;
  for (const auto& p : terms_) {
    acc += power * grid_.interpolate(p, s);
    power *= s;
  }
  return acc;
}

double Secular::end_value() const { return value(grid_.period()); }

Samples Secular::to_samples() const {
  Samples out(grid_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = at_node(j);
  return out;
}

Secular Secular::derivative() const {
  Secular out(grid_);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Samples dp = grid_.derivative(terms_[k]);
    Samples& same = out.term(k);
    for (std::size_t j = 0; j < dp.size(); ++j) same[j] += dp[j];
    if (k > 0) {
      Samples& lower = out.term(k - 1);
      for (std::size_t j = 0; j < dp.size(); ++j) lower[j] += static_cast<double>(k) * terms_[k][j];
    }
  }
  out.trim();
  return out;
}

namespace {

// Antiderivative of s^k p(s) from 0, by parts against the periodic primitive of p.
Secular integrate_monomial(const PeriodicGrid& grid, std::size_t k, const Samples& p) {
  const double mean = grid.mean(p);
  const Samples primitive = grid.periodic_antiderivative(p);
  Secular out(grid);
  Secular shifted(grid);
  // mean * s^{k+1} / (k+1)
  Secular lead = Secular::constant(grid, mean / static_cast<double>(k + 1));
  for (std::size_t i = 0; i <= k; ++i) lead = lead * Secular::identity(grid);
  out += lead;
  // s^k P(s)
  Secular sp(grid, primitive);
  for (std::size_t i = 0; i < k; ++i) sp = sp * Secular::identity(grid);
  out += sp;
  if (k > 0) out -= static_cast<double>(k) * integrate_monomial(grid, k - 1, primitive);
  return out;
}

}  // namespace

Secular Secular::integral() const {
  Secular out(grid_);
  for (std::size_t k = 0; k < terms_.size(); ++k) out += integrate_monomial(grid_, k, terms_[k]);
  out.trim();
  return out;
}

double Secular::definite_integral() const { return integral().end_value(); }

Secular Secular::resample(std::size_t m) const {
  PeriodicGrid fine(m, grid_.period());
  Secular out(fine);
  out.terms_.clear();
  for (const auto& p : terms_) out.terms_.push_back(grid_.resample(p, m));
  return out;
}

Secular& Secular::operator+=(const Secular& other) {
  if (other.grid_.size() != grid_.size()) throw GridMismatch("secular sum on different grids");
  for (std::size_t k = 0; k < other.terms_.size(); ++k) {
    Samples& t = term(k);
    for (std::size_t j = 0; j < t.size(); ++j) t[j] += other.terms_[k][j];
  }
  return *this;
}

Secular& Secular::operator-=(const Secular& other) {
  if (other.grid_.size() != grid_.size()) throw GridMismatch("secular difference on different grids");
  for (std::size_t k = 0; k < other.terms_.size(); ++k) {
    Samples& t = term(k);
    for (std::size_t j = 0; j < t.size(); ++j) t[j] -= other.terms_[k][j];
  }
  return *this;
}

Secular& Secular::operator*=(double a) {
  for (auto& t : terms_)
    for (double& v : t) v *= a;
  return *this;
}

Secular& Secular::operator*=(const Samples& periodic) {
  if (periodic.size() != grid_.size()) throw GridMismatch("secular product with foreign samples");
  for (auto& t : terms_)
    for (std::size_t j = 0; j < t.size(); ++j) t[j] *= periodic[j];
  return *this;
}

Secular operator*(const Secular& a, const Secular& b) {
  if (a.grid_.size() != b.grid_.size()) throw GridMismatch("secular product on different grids");
  Secular out(a.grid_);
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    for (std::size_t k = 0; k < b.terms_.size(); ++k) {
      Samples& t = out.term(i + k);
      for (std::size_t j = 0; j < t.size(); ++j) t[j] += a.terms_[i][j] * b.terms_[k][j];
    }
  }
  out.trim();
  return out;
}

std::vector<std::vector<double>> finite_difference_weights(double x0, const std::vector<double>& xs,
                                                           int max_order) {
  const std::size_t n = xs.size();
  const auto orders = static_cast<std::size_t>(max_order) + 1;
  std::vector<std::vector<double>> c(orders, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, orders - 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

}  // namespace ksv
