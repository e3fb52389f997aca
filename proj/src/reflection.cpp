#include "bsnoma/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

// Relative shrink that keeps Gamma = upper inside the harvest constraint
// after rounding.
constexpr double kUpperMargin = 1e-12;

std::string sensor_name(std::size_t k) { return "Gamma[" + std::to_string(k + 1) + "]"; }

bool sic_gap_holds(double p, Pair gammas, const ScenarioChannel& ch, const SystemParams& params) {
  return p * (gammas[1] * ch.g_hat[1] - gammas[0] * ch.g_hat[0]) >= params.p_gap();
}

}  // namespace

const char* to_string(ReflectionCase c) {
  switch (c) {
    case ReflectionCase::kUpperInterior: return "upper-interior";
    case ReflectionCase::kSaturatedOne: return "saturated-one";
    case ReflectionCase::kInfeasible: return "infeasible";
  }
  return "infeasible";
}

ReflectionBounds gamma_bounds(double p, double gamma_first, double theta,
                              const ScenarioChannel& ch, const ApproxCoeffs& coeffs,
                              const SystemParams& params) {
  if (!(p > 0.0)) throw InvalidArgument("gamma_bounds: p_ce_star must be > 0");
  if (!(theta > 0.0)) throw InvalidArgument("gamma_bounds: theta must be > 0");

  ReflectionBounds b;
  b.theta = theta;
  b.sigma2_t = ch.sigma2_e * p * theta + params.sigma2_n_w;
  b.i_noma = {0.0, p * gamma_first * ch.g_hat[0]};
  for (std::size_t k = 0; k < kSensors; ++k) {
    const double p_i = incident_power(p, ch.g_f[k]);
    b.raw_upper[k] = 1.0 + params.t_h[k] / params.t_t[k] - params.p_c_rs_w / (params.xi * p_i);
    b.upper[k] = b.raw_upper[k] >= 1.0 ? 1.0 : b.raw_upper[k] * (1.0 - kUpperMargin);
    b.aleph[k] = (params.r_min - params.t_t[k] * coeffs.phi[k]) / (params.t_t[k] * coeffs.pi[k]);
    b.lower[k] = std::exp2(b.aleph[k]) * (b.sigma2_t + b.i_noma[k]) / (p * ch.g_hat[k]);
  }
  return b;
}

ReflectionBounds gamma_bounds(double p, const ScenarioChannel& ch, const ApproxCoeffs& coeffs,
                              const SystemParams& params) {
  if (!(p > 0.0)) throw InvalidArgument("gamma_bounds: p_ce_star must be > 0");
  // Upper bounds do not depend on theta or Gamma_1; a first pass yields them.
  const ReflectionBounds probe = gamma_bounds(p, 1.0, 1.0, ch, coeffs, params);
  const double first = probe.upper[0];
  const double theta = params.theta.value_or(probe.upper[0] + probe.upper[1]);
  if (!(first > 0.0) || !(theta > 0.0)) return probe;
  return gamma_bounds(p, first, theta, ch, coeffs, params);
}

ReflectionSolution optimal_reflection(const ReflectionBounds& bounds, const ScenarioChannel& ch,
                                      double p, const ApproxCoeffs& coeffs,
                                      const SystemParams& params) {
  ReflectionSolution sol;
  sol.bounds = bounds;
  for (std::size_t k = 0; k < kSensors; ++k) {
    const double lo = bounds.lower[k];
    const double up = bounds.upper[k];
    if (!(up > 0.0) || !(lo <= up)) {
      sol.case_tag[k] = ReflectionCase::kInfeasible;
      throw InfeasibleProblem(sensor_name(k), sensor_name(k) + ": lower bound " +
                                                  std::to_string(lo) + " exceeds upper bound " +
                                                  std::to_string(up));
    }
    sol.gamma[k] = up;
    sol.case_tag[k] = up == 1.0 ? ReflectionCase::kSaturatedOne : ReflectionCase::kUpperInterior;
  }

  if (sol.gamma[0] != 1.0 || sol.gamma[1] != 1.0 || sic_gap_holds(p, sol.gamma, ch, params)) {
    return sol;
  }

  sol.sic_adjusted = true;
  for (double nu = params.nu;; nu *= 2.0) {
    if (nu >= 0.5) throw InfeasibleProblem("SIC", "SIC: power gap unreachable with nu < 0.5");
    const double first = 1.0 - nu;
    const double theta = params.theta.value_or(first + 1.0);
    const ReflectionBounds b = gamma_bounds(p, first, theta, ch, coeffs, params);
    if (!(b.lower[0] <= first)) {
      throw InfeasibleProblem(sensor_name(0), sensor_name(0) + ": SIC back-off falls below the QoS bound");
    }
    if (!(b.lower[1] <= 1.0)) {
      throw InfeasibleProblem(sensor_name(1), sensor_name(1) + ": QoS bound exceeds 1 after SIC back-off");
    }
    sol.gamma = {first, 1.0};
    sol.case_tag[0] = ReflectionCase::kUpperInterior;
    sol.nu = nu;
    sol.bounds = b;
    if (sic_gap_holds(p, sol.gamma, ch, params)) return sol;
  }
}

}  // namespace bsnoma
