#pragma once

#include "ksv/curve.hpp"

namespace ksv {

inline constexpr double kConditionLimit = 1e12;

/// Condition number (2-norm) of m after row and column equilibration.
double equilibrated_condition(const Mat3& m);

/// Solves m x = b by partial-pivoting LU. Throws SingularSystem, naming
/// `what` and printing m, when the equilibrated condition exceeds the limit.
Vec3 solve3(const Mat3& m, const Vec3& b, const char* what);
Mat3 solve3(const Mat3& m, const Mat3& b, const char* what);

}  // namespace ksv
