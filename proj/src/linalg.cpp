#include "ksv/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "ksv/errors.hpp"

namespace ksv {

namespace {

struct Equilibrated {
  Mat3 a;
  Vec3 row_scale = Vec3::Ones();
  Vec3 col_scale = Vec3::Ones();
};

// a = diag(row_scale) m diag(col_scale) with every row and column max near 1.
Equilibrated equilibrate(const Mat3& m) {
  Equilibrated e{m};
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < 3; ++i) {
      const double r = e.a.row(i).cwiseAbs().maxCoeff();
      if (r > 0.0) {
        e.a.row(i) /= r;
        e.row_scale[i] /= r;
      }
    }
    for (int j = 0; j < 3; ++j) {
      const double c = e.a.col(j).cwiseAbs().maxCoeff();
      if (c > 0.0) {
        e.a.col(j) /= c;
        e.col_scale[j] /= c;
      }
    }
  }
  return e;
}

double condition_of(const Mat3& a) {
  const Eigen::JacobiSVD<Mat3> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(2) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(2);
}

Equilibrated guarded(const Mat3& m, const char* what) {
  double cond = std::numeric_limits<double>::infinity();
  Equilibrated e{m};
  if (m.allFinite()) {
    e = equilibrate(m);
    cond = condition_of(e.a);
  }
  if (!(cond <= kConditionLimit)) {
    std::ostringstream msg;
    msg << what << ": coefficient matrix is singular to working precision (condition " << cond
        << ")\n"
        << m;
    throw SingularSystem(msg.str(), cond);
  }
  return e;
}

}  // namespace

double equilibrated_condition(const Mat3& m) {
  if (!m.allFinite()) return std::numeric_limits<double>::infinity();
  return condition_of(equilibrate(m).a);
}

Vec3 solve3(const Mat3& m, const Vec3& b, const char* what) {
  const Equilibrated e = guarded(m, what);
  const Vec3 y = e.a.partialPivLu().solve(e.row_scale.asDiagonal() * b);
  return e.col_scale.asDiagonal() * y;
}

Mat3 solve3(const Mat3& m, const Mat3& b, const char* what) {
  const Equilibrated e = guarded(m, what);
  const Mat3 y = e.a.partialPivLu().solve(e.row_scale.asDiagonal() * b);
  return e.col_scale.asDiagonal() * y;
}

}  // namespace ksv
