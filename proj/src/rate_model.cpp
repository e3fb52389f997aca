#include "bsnoma/rate_model.hpp"

#include <cmath>
#include <string>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

void check_inputs(double p_ce_w, Pair gammas) {
  if (!(p_ce_w >= 0.0)) throw InvalidArgument("sinr_pair: p_ce_w must be >= 0");
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw InvalidArgument("sinr_pair: gamma must lie in (0, 1]");
  }
}

Pair sinr_with_error_sum(double p, Pair gammas, double reflect_sum,
                         const ScenarioChannel& ch, const SystemParams& params) {
  const double s1 = p * gammas[0] * ch.g_hat[0];
  const double s2 = p * gammas[1] * ch.g_hat[1];
  const double err = ch.sigma2_e * p * reflect_sum + params.sigma2_n_w;
  return {s1 / err, s2 / (s1 + err)};
}

}  // namespace

Pair sinr_pair(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
               const SystemParams& params) {
  check_inputs(p_ce_w, gammas);
  return sinr_with_error_sum(p_ce_w, gammas, gammas[0] + gammas[1], channel, params);
}

Pair sinr_pair_frozen(double p_ce_w, Pair gammas, double theta,
                      const ScenarioChannel& channel, const SystemParams& params) {
  // Gamma above 1 is allowed here so finite differences can straddle Gamma = 1.
  if (!(p_ce_w >= 0.0) || !(gammas[0] > 0.0) || !(gammas[1] > 0.0) || !(theta > 0.0)) {
    throw InvalidArgument("sinr_pair_frozen: arguments must be positive");
  }
  return sinr_with_error_sum(p_ce_w, gammas, theta, channel, params);
}

double sum_rate_exact(Pair gamma, const SystemParams& params) {
  double r = 0.0;
  for (std::size_t k = 0; k < kSensors; ++k) {
    if (!(gamma[k] >= 0.0)) throw InvalidArgument("sum_rate_exact: SINR must be >= 0");
    r += params.t_t[k] * std::log2(1.0 + gamma[k]);
  }
  return r;
}

ApproxCoeffs approx_coeffs(Pair gamma_anchor) {
  ApproxCoeffs c;
  for (std::size_t k = 0; k < kSensors; ++k) {
    const double z0 = gamma_anchor[k];
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
      throw InvalidArgument("approx_coeffs: anchor SINR must be finite and > 0");
    }
    c.anchor[k] = z0;
    c.pi[k] = z0 / (1.0 + z0);
    c.phi[k] = std::log2(1.0 + z0) - c.pi[k] * std::log2(z0);
  }
  return c;
}

double sum_rate_approx(Pair gamma, const ApproxCoeffs& coeffs, const SystemParams& params) {
  double r = 0.0;
  for (std::size_t k = 0; k < kSensors; ++k) {
    if (!(gamma[k] > 0.0)) throw InvalidArgument("sum_rate_approx: SINR must be > 0");
    r += params.t_t[k] * (coeffs.pi[k] * std::log2(gamma[k]) + coeffs.phi[k]);
  }
  return r;
}

double total_power(double p_ce_w, const SystemParams& params) {
  if (!(p_ce_w >= 0.0)) throw InvalidArgument("total_power: p_ce_w must be >= 0");
  double p = params.p_c_ce_w + params.p_c_rsu_w;
  for (std::size_t k = 0; k < kSensors; ++k) {
    p += p_ce_w / params.kappa[k] * (params.t_t[k] + params.t_h[k]);
  }
  return p;
}

double energy_efficiency(double rate, double p_total_w) {
  if (!(p_total_w > 0.0)) throw InvalidArgument("energy_efficiency: total power must be > 0");
  return rate / p_total_w;
}

RateReport rate_report(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
                       const SystemParams& params, const std::optional<ApproxCoeffs>& coeffs) {
  RateReport r;
  r.gamma = sinr_pair(p_ce_w, gammas, channel, params);
  r.rate_exact = sum_rate_exact(r.gamma, params);
  const ApproxCoeffs c = coeffs ? *coeffs : approx_coeffs(r.gamma);
  r.rate_approx = sum_rate_approx(r.gamma, c, params);
  r.p_total_w = total_power(p_ce_w, params);
  r.ee = energy_efficiency(r.rate_approx, r.p_total_w);
  return r;
}

double exact_ee(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
                const SystemParams& params) {
  const Pair g = sinr_pair(p_ce_w, gammas, channel, params);
  return energy_efficiency(sum_rate_exact(g, params), total_power(p_ce_w, params));
}

double qos_sinr_threshold(const SystemParams& params, std::size_t k) {
  return std::exp2(params.r_min / params.t_t[k]) - 1.0;
}

double approx_sinr_threshold(const ApproxCoeffs& coeffs, const SystemParams& params,
                             std::size_t k) {
  const double aleph =
      (params.r_min - params.t_t[k] * coeffs.phi[k]) / (params.t_t[k] * coeffs.pi[k]);
  return std::exp2(aleph);
}

}  // namespace bsnoma
