#pragma once

#include <optional>

#include "bsnoma/scenario.hpp"

namespace bsnoma {

/// Coefficients of the tangent lower bound
///   Pi * log2(z) + Phi <= log2(1 + z),  tight at z = anchor.
struct ApproxCoeffs {
  Pair pi{};
  Pair phi{};
  Pair anchor{};
};

/// Rates are in bits/s/Hz (bandwidth factored out), so ee is bits/Hz/J.
struct RateReport {
  Pair gamma{};
  double rate_exact = 0.0;
  double rate_approx = 0.0;
  double p_total_w = 0.0;
  double ee = 0.0;  // rate_approx / p_total_w
};

/// SINRs under imperfect CSI. Sensor 2 (index 1) is decoded first and sees
/// sensor 1 as interference; sensor 1 is decoded after cancellation. Both see
/// the residual estimation-error term sigma2_e * P * (Gamma_1 + Gamma_2).
Pair sinr_pair(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
               const SystemParams& params);

/// Same SINRs with the reflection sum in the error term replaced by `theta`.
Pair sinr_pair_frozen(double p_ce_w, Pair gammas, double theta,
                      const ScenarioChannel& channel, const SystemParams& params);

double sum_rate_exact(Pair gamma, const SystemParams& params);

ApproxCoeffs approx_coeffs(Pair gamma_anchor);

/// Throws InvalidArgument when any gamma is not strictly positive.
double sum_rate_approx(Pair gamma, const ApproxCoeffs& coeffs, const SystemParams& params);

/// Total consumption, summing the CE transmit term once per sensor.
double total_power(double p_ce_w, const SystemParams& params);

double energy_efficiency(double rate, double p_total_w);

/// Evaluates everything at (P, Gamma). Without `coeffs` the bound is anchored
/// at the point itself, so rate_approx == rate_exact.
RateReport rate_report(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
                       const SystemParams& params,
                       const std::optional<ApproxCoeffs>& coeffs = std::nullopt);

/// Exact-rate energy efficiency at (P, Gamma).
double exact_ee(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
                const SystemParams& params);

/// SINR threshold 2^(R_min / T_t,k) - 1 for the exact-rate QoS constraint.
double qos_sinr_threshold(const SystemParams& params, std::size_t k);

/// SINR threshold 2^aleph_k of the bounded-rate QoS constraint, where
/// aleph_k = (R_min - T_t,k Phi_k) / (T_t,k Pi_k).
double approx_sinr_threshold(const ApproxCoeffs& coeffs, const SystemParams& params,
                             std::size_t k);

}  // namespace bsnoma
