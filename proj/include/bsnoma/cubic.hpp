#pragma once

#include <vector>

namespace bsnoma {

/// Real roots of a*x^3 + b*x^2 + c*x + d = 0, ascending, with multiplicity
/// for exactly repeated roots.
///
/// Cardano in the shifted form x = t + p with p = -b/(3a),
/// q = p^3 + (bc - 3ad)/(6a^2), r = c/(3a):
///   t = cbrt(q + sqrt(q^2 + (r - p^2)^3)) + cbrt(q - sqrt(q^2 + (r - p^2)^3))
/// and the trigonometric form when q^2 + (r - p^2)^3 < 0 (three real roots).
/// a == 0 falls back to the quadratic / linear formula. Each root is polished
/// with Newton steps on the original polynomial.
///
/// Throws InvalidArgument when all four coefficients are zero.
std::vector<double> solve_cubic(double a, double b, double c, double d);

}  // namespace bsnoma
