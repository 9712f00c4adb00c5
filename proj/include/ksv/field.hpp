#pragma once

// Displacement fields polynomial in the axial coordinate:
// u(s, z) = sum_m z^m c_m(s), each c_m a 3-vector of secular functions of s.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "ksv/curve.hpp"
#include "ksv/spectral.hpp"

namespace ksv {

using SecularVec = std::array<Secular, 3>;

SecularVec zero_vec(const PeriodicGrid& grid);

class AxialPolynomialField {
 public:
  AxialPolynomialField() = default;
  AxialPolynomialField(PeriodicGrid grid, std::size_t degree);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  /// Declared polynomial degree in z.
  std::size_t z_degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  SecularVec& coeff(std::size_t m) { return coeffs_.at(m); }
  const SecularVec& coeff(std::size_t m) const { return coeffs_.at(m); }

  Vec3 at_node(std::size_t j, double z) const;
  VecSamples sample(double z) const;
  /// Samples at m uniform nodes over the same period.
  VecSamples sample_resampled(double z, std::size_t m) const;
  /// Any s in [0, period]; s = period is the one-sided limit at the seam.
  Vec3 value(double s, double z) const;

  AxialPolynomialField s_derivative() const;
  AxialPolynomialField z_derivative() const;

  AxialPolynomialField& operator+=(const AxialPolynomialField& other);
  AxialPolynomialField& operator*=(double a);
  friend AxialPolynomialField operator+(AxialPolynomialField a, const AxialPolynomialField& b) {
    return a += b;
  }
  friend AxialPolynomialField operator*(double c, AxialPolynomialField a) { return a *= c; }

 private:
  PeriodicGrid grid_;
  std::vector<SecularVec> coeffs_;
};

/// What the verification suite needs to know about a candidate field: its
/// samples on the curve grid at any z, and optionally its exact degree in z
/// (negative when unknown).
struct FieldEvaluator {
  std::function<VecSamples(double)> sample;
  int z_degree = -1;
};

FieldEvaluator as_evaluator(const AxialPolynomialField& field);
FieldEvaluator as_evaluator(AxialPolynomialField&& field);

}  // namespace ksv
