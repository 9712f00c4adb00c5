#include "ksv/field.hpp"

#include <memory>

#include "ksv/errors.hpp"

namespace ksv {

SecularVec zero_vec(const PeriodicGrid& grid) { return {Secular(grid), Secular(grid), Secular(grid)}; }

AxialPolynomialField::AxialPolynomialField(PeriodicGrid grid, std::size_t degree) : grid_(grid) {
  coeffs_.assign(degree + 1, zero_vec(grid));
}

Vec3 AxialPolynomialField::at_node(std::size_t j, double z) const {
  Vec3 out = Vec3::Zero();
  double power = 1.0;
  for (const auto& c : coeffs_) {
    for (int i = 0; i < 3; ++i) out[i] += power * c[i].at_node(j);
    power *= z;
  }
  return out;
}

VecSamples AxialPolynomialField::sample(double z) const {
  VecSamples out(grid_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = at_node(j, z);
  return out;
}

VecSamples AxialPolynomialField::sample_resampled(double z, std::size_t m) const {
  if (m == grid_.size()) return sample(z);
  VecSamples out(m, Vec3::Zero());
  double power = 1.0;
  for (const auto& c : coeffs_) {
    for (int i = 0; i < 3; ++i) {
      const Secular fine = c[i].resample(m);
      for (std::size_t j = 0; j < m; ++j) out[j][i] += power * fine.at_node(j);
    }
    power *= z;
  }
  return out;
}

Vec3 AxialPolynomialField::value(double s, double z) const {
  Vec3 out = Vec3::Zero();
  double power = 1.0;
  for (const auto& c : coeffs_) {
    for (int i = 0; i < 3; ++i) out[i] += power * c[i].value(s);
    power *= z;
  }
  return out;
}

AxialPolynomialField AxialPolynomialField::s_derivative() const {
  AxialPolynomialField out(grid_, z_degree());
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    for (int i = 0; i < 3; ++i) out.coeffs_[m][i] = coeffs_[m][i].derivative();
  }
  return out;
}

AxialPolynomialField AxialPolynomialField::z_derivative() const {
  const std::size_t deg = z_degree();
  AxialPolynomialField out(grid_, deg == 0 ? 0 : deg - 1);
  for (std::size_t m = 1; m < coeffs_.size(); ++m) {
    for (int i = 0; i < 3; ++i) out.coeffs_[m - 1][i] = static_cast<double>(m) * coeffs_[m][i];
  }
  return out;
}

AxialPolynomialField& AxialPolynomialField::operator+=(const AxialPolynomialField& other) {
  if (coeffs_.empty()) return *this = other;
  if (other.grid_.size() != grid_.size()) throw GridMismatch("field sum on different grids");
  while (coeffs_.size() < other.coeffs_.size()) coeffs_.push_back(zero_vec(grid_));
  for (std::size_t m = 0; m < other.coeffs_.size(); ++m) {
    for (int i = 0; i < 3; ++i) coeffs_[m][i] += other.coeffs_[m][i];
  }
  return *this;
}

AxialPolynomialField& AxialPolynomialField::operator*=(double a) {
  for (auto& c : coeffs_)
    for (auto& v : c) v *= a;
  return *this;
}

FieldEvaluator as_evaluator(const AxialPolynomialField& field) {
  return as_evaluator(AxialPolynomialField(field));
}

FieldEvaluator as_evaluator(AxialPolynomialField&& field) {
  auto shared = std::make_shared<const AxialPolynomialField>(std::move(field));
  FieldEvaluator ev;
  ev.sample = [shared](double z) { return shared->sample(z); };
  ev.z_degree = static_cast<int>(shared->z_degree());
  return ev;
}

}  // namespace ksv
