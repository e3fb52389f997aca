#pragma once

#include <array>
#include <string>

#include "bsnoma/rate_model.hpp"
#include "bsnoma/scenario.hpp"

namespace bsnoma {

/// Per-sensor interval for the reflection coefficient at a fixed CE power.
struct ReflectionBounds {
  Pair lower{};      // QoS: 2^aleph_k (sigma2_t + i_noma_k) / (P |H_k|^2)
  Pair upper{};      // circuit power, clamped to 1
  Pair raw_upper{};  // circuit power before the clamp
  Pair aleph{};
  double sigma2_t = 0.0;  // sigma2_e P theta + sigma2_n
  double theta = 0.0;
  Pair i_noma{};  // i_noma[0] = 0, i_noma[1] = P Gamma_1 |H_1|^2
};

enum class ReflectionCase { kUpperInterior, kSaturatedOne, kInfeasible };

const char* to_string(ReflectionCase c);

struct ReflectionSolution {
  Pair gamma{};
  std::array<ReflectionCase, 2> case_tag{ReflectionCase::kInfeasible, ReflectionCase::kInfeasible};
  bool sic_adjusted = false;
  double nu = 0.0;  // back-off applied to sensor 1 when sic_adjusted
  ReflectionBounds bounds;  // bounds at the returned coefficients
};

/// Upper bounds only depend on the power; `lower[1]` uses `gamma_first` as the
/// already-fixed coefficient of sensor 1, and `theta` freezes the error term.
ReflectionBounds gamma_bounds(double p_ce_star, double gamma_first, double theta,
                              const ScenarioChannel& channel, const ApproxCoeffs& coeffs,
                              const SystemParams& params);

/// Sequential evaluation: sensor 1 first, then sensor 2 with I_NOMA at the
/// chosen Gamma_1. Without a configured theta the frozen sum is the sum of
/// the upper bounds.
ReflectionBounds gamma_bounds(double p_ce_star, const ScenarioChannel& channel,
                              const ApproxCoeffs& coeffs, const SystemParams& params);

/// Gamma*_k = upper_k, tagged saturated-one when upper_k == 1. When both land
/// on 1 and the SIC power gap P (Gamma_2 |H_2|^2 - Gamma_1 |H_1|^2) >= P_gap
/// fails, sensor 1 backs off to 1 - nu with nu doubling until the gap holds.
/// Throws InfeasibleProblem naming the sensor whose interval is empty, or
/// "SIC" when nu reaches 0.5.
ReflectionSolution optimal_reflection(const ReflectionBounds& bounds,
                                      const ScenarioChannel& channel, double p_ce_star,
                                      const ApproxCoeffs& coeffs, const SystemParams& params);

}  // namespace bsnoma
