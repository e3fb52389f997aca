#include "bsnoma/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

double horner(double a, double b, double c, double d, double x) {
  return ((a * x + b) * x + c) * x + d;
}

double polish(double a, double b, double c, double d, double x) {
  double fx = horner(a, b, c, d, x);
  for (int i = 0; i < 4 && fx != 0.0; ++i) {
    const double dfx = (3.0 * a * x + 2.0 * b) * x + c;
    if (dfx == 0.0) break;
    const double next = x - fx / dfx;
    const double fn = horner(a, b, c, d, next);
    if (!std::isfinite(next) || std::abs(fn) >= std::abs(fx)) break;
    x = next;
    fx = fn;
  }
  return x;
}

std::vector<double> solve_quadratic(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) {
    const double x = -b / (2.0 * a);
    return {x, x};
  }
  // Avoid cancellation between -b and sqrt(disc).
  const double qq = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> roots{qq / a, c / qq};
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<double> solve_cubic(double a, double b, double c, double d) {
  if (a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0) {
    throw InvalidArgument("solve_cubic: all coefficients are zero");
  }
  // Scale to unit max-magnitude so the discriminant neither under- nor overflows.
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  a /= scale;
  b /= scale;
  c /= scale;
  d /= scale;

  std::vector<double> roots;
  if (a == 0.0) {
    roots = solve_quadratic(b, c, d);
  } else {
    const double p = -b / (3.0 * a);
    const double q = p * p * p + (b * c - 3.0 * a * d) / (6.0 * a * a);
    const double r = c / (3.0 * a);
    const double m = r - p * p;
    const double disc = q * q + m * m * m;

    if (disc > 0.0) {
      const double s = std::sqrt(disc);
      roots.push_back(std::cbrt(q + s) + std::cbrt(q - s) + p);
    } else if (disc == 0.0) {
      const double u = std::cbrt(q);
      roots = {2.0 * u + p, -u + p, -u + p};
    } else {
      // Casus irreducibilis: m < 0, cos(3 phi) = q / (-m)^(3/2).
      const double sm = std::sqrt(-m);
      const double arg = std::clamp(q / (sm * sm * sm), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) {
        roots.push_back(2.0 * sm * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + p);
      }
    }
  }

  for (double& x : roots) x = polish(a, b, c, d, x);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace bsnoma
