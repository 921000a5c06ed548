#pragma once

namespace gkpt {

// hbar = 1 throughout, [x, p] = i. All quadrature values are dimensionless.
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;    // sqrt(pi)
inline constexpr double kSqrtHalfPi = 1.25331413731550025121; // sqrt(pi/2)
inline constexpr double kSqrtTwoPi = 2.50662827463100050242;  // sqrt(2*pi)
inline constexpr double kSqrt2 = 1.41421356237309504880;

}  // namespace gkpt
