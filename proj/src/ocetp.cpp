#include "bsnoma/ocetp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bsnoma/cubic.hpp"
#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

// Lower bounds are nudged up by this relative amount so that the exact
// constraint still holds after rounding.
constexpr double kLowerNudge = 1e-10;

void check_gammas(Pair gammas) {
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw InvalidArgument("reflection coefficients must lie in (0, 1]");
  }
}

double harvest_per_watt(const ScenarioChannel& ch, Pair gammas, const SystemParams& params,
                        std::size_t k) {
  return params.xi * ch.g_f[k] * ((1.0 - gammas[k]) * params.t_t[k] + params.t_h[k]);
}

}  // namespace

double PowerObjective::operator()(double p_ce_w, const SystemParams& params) const {
  const Pair g = sinr_pair(p_ce_w, gammas, *channel, params);
  return sum_rate_approx(g, coeffs, params) - psi * total_power(p_ce_w, params);
}

PowerInterval feasible_power_interval(const ScenarioChannel& ch, Pair gammas,
                                      const SystemParams& params) {
  check_gammas(gammas);
  const double sigma2 = params.sigma2_n_w;
  const double err = ch.sigma2_e * (gammas[0] + gammas[1]);

  PowerInterval iv;
  iv.upper = params.p_max_w;

  auto raise = [&](double bound, const std::string& name) {
    if (bound > iv.lower) {
      iv.lower = bound;
      iv.binding = name;
    }
  };

  // gamma_k(P) = P a_k / (P b_k + sigma2) >= t_k  <=>  P (a_k - t_k b_k) >= t_k sigma2
  const Pair a{gammas[0] * ch.g_hat[0], gammas[1] * ch.g_hat[1]};
  const Pair b{err, gammas[0] * ch.g_hat[0] + err};
  for (std::size_t k = 0; k < kSensors; ++k) {
    const std::string name = "C" + std::to_string(k + 1);
    const double t = qos_sinr_threshold(params, k);
    const double slope = a[k] - t * b[k];
    if (!(slope > 0.0)) {
      throw InfeasibleProblem(name, name + ": SINR of sensor " + std::to_string(k + 1) +
                                        " saturates below the QoS threshold at any power");
    }
    raise(t * sigma2 / slope * (1.0 + kLowerNudge), name);
  }

  for (std::size_t k = 0; k < kSensors; ++k) {
    const std::string name = "C5[" + std::to_string(k + 1) + "]";
    const double h = harvest_per_watt(ch, gammas, params, k);
    if (!(h > 0.0)) throw InfeasibleProblem(name, name + ": sensor cannot harvest energy");
    raise(params.p_c_rs_w * params.t_t[k] / h * (1.0 + kLowerNudge), name);
  }

  if (iv.lower > iv.upper) {
    throw InfeasibleProblem(iv.binding, iv.binding + ": requires P_ce >= " +
                                            std::to_string(iv.lower) + " W > P_max");
  }
  return iv;
}

CardanoCoeffs cardano_coefficients(const ScenarioChannel& ch, Pair gammas,
                                   const ApproxCoeffs& coeffs, const DualState& duals,
                                   double psi, const SystemParams& params) {
  const double s2 = params.sigma2_n_w;
  const double ln2 = std::numbers::ln2;
  const double err_sum = ch.sigma2_e * (gammas[0] + gammas[1]);

  CardanoCoeffs cc;
  cc.cap_a = params.t_t[0] * coeffs.pi[0] * s2;
  cc.cap_b = err_sum;
  cc.cap_c = params.t_t[1] * coeffs.pi[1] * s2;
  cc.cap_d = gammas[0] * ch.g_hat[0] + err_sum;

  double g = -duals.lambda;
  double prior = 0.0;  // sum_{l<k} Gamma_l |H_l|^2
  for (std::size_t k = 0; k < kSensors; ++k) {
    const double thr = approx_sinr_threshold(coeffs, params, k);
    cc.q_k[k] = gammas[k] * ch.g_hat[k] - thr * (prior + err_sum);
    prior += gammas[k] * ch.g_hat[k];
    cc.p_h_k[k] = harvest_per_watt(ch, gammas, params, k);
    g += duals.mu[k] * cc.q_k[k] + duals.beta[k] * cc.p_h_k[k];
    g -= psi * (params.t_t[k] + params.t_h[k]) / params.kappa[k];
  }
  cc.cap_g = g;

  const double A = cc.cap_a, B = cc.cap_b, C = cc.cap_c, D = cc.cap_d, G = cc.cap_g;
  cc.a = ln2 * B * D * G;
  cc.b = ln2 * B * G * s2 + ln2 * D * G * s2;
  cc.c = ln2 * G * s2 * s2 + A * D + C * B;
  cc.d = A * s2 + C * s2;
  cc.degenerate = (G == 0.0) || (B * D == 0.0);
  if (cc.a != 0.0) {
    cc.p = -cc.b / (3.0 * cc.a);
    cc.q = cc.p * cc.p * cc.p + (cc.b * cc.c - 3.0 * cc.a * cc.d) / (6.0 * cc.a * cc.a);
    cc.r = cc.c / (3.0 * cc.a);
  }
  return cc;
}

std::vector<double> solve_cubic(const CardanoCoeffs& cc) {
  if (cc.a == 0.0 && cc.b == 0.0 && cc.c == 0.0 && cc.d == 0.0) return {};
  return solve_cubic(cc.a, cc.b, cc.c, cc.d);
}

double select_power_candidate(const std::vector<double>& roots, const PowerObjective& objective,
                              const SystemParams& params) {
  const PowerInterval& iv = objective.interval;
  std::vector<double> candidates;
  for (double r : roots) {
    if (!std::isfinite(r) || r <= 0.0) continue;
    candidates.push_back(std::clamp(r, iv.lower, iv.upper));
  }
  candidates.push_back(iv.upper);

  double best = iv.upper;
  double best_value = -INFINITY;
  for (double p : candidates) {
    if (!(p > 0.0)) continue;
    const double v = objective(p, params);
    if (v > best_value) {
      best_value = v;
      best = p;
    }
  }
  return best;
}

DualState update_duals(const DualState& duals, double p, Pair gammas, const ScenarioChannel& ch,
                       const ApproxCoeffs& coeffs, const SystemParams& params) {
  DualState next = duals;
  next.iter = duals.iter + 1;
  const double decay = 1.0 / std::sqrt(static_cast<double>(next.iter));
  const auto& w = params.step_sizes;

  const double interference = ch.sigma2_e * p * (gammas[0] + gammas[1]) + params.sigma2_n_w;
  const double s1 = p * gammas[0] * ch.g_hat[0];
  const double s2 = p * gammas[1] * ch.g_hat[1];

  const double slack_cap = params.p_max_w - p;
  const Pair slack_qos{s1 - approx_sinr_threshold(coeffs, params, 0) * interference,
                       s2 - approx_sinr_threshold(coeffs, params, 1) * (s1 + interference)};

  next.lambda = std::max(0.0, duals.lambda - w[0] * decay * slack_cap);
  for (std::size_t k = 0; k < kSensors; ++k) {
    const HarvestedPower h = harvested_power(incident_power(p, ch.g_f[k]), gammas[k], params, k);
    const double slack_harvest = h.total() - params.p_c_rs_w * params.t_t[k];
    next.mu[k] = std::max(0.0, duals.mu[k] - w[1 + k] * decay * slack_qos[k]);
    next.beta[k] = std::max(0.0, duals.beta[k] - w[3 + k] * decay * slack_harvest);
  }
  return next;
}

StageOneResult run_ocetp(const ScenarioChannel& ch, Pair gammas, const SystemParams& params,
                         const OcetpInit& init) {
  params.validate();
  check_gammas(gammas);

  StageOneResult out;
  out.interval = feasible_power_interval(ch, gammas, params);
  const PowerInterval& iv = out.interval;

  DualState duals = init.duals.value_or(DualState{});
  double psi = init.psi.value_or(0.0);
  double p = std::clamp(init.p_ce_w.value_or(0.5 * params.p_max_w), iv.lower, iv.upper);

  for (int it = 1; it <= params.i_max; ++it) {
    const ApproxCoeffs coeffs = approx_coeffs(sinr_pair(p, gammas, ch, params));
    const Pair gamma_now = sinr_pair(p, gammas, ch, params);
    psi = sum_rate_approx(gamma_now, coeffs, params) / total_power(p, params);
    duals = update_duals(duals, p, gammas, ch, coeffs, params);

    const CardanoCoeffs cc = cardano_coefficients(ch, gammas, coeffs, duals, psi, params);
    const PowerObjective objective{&ch, gammas, coeffs, psi, iv};
    const double p_next = select_power_candidate(solve_cubic(cc), objective, params);
    const double residual = std::abs(objective(p_next, params));
    if (!std::isfinite(p_next) || !std::isfinite(residual)) {
      throw NumericalError("run_ocetp: non-finite iterate");
    }

    out.trace.push_back({psi, p_next, residual});
    p = p_next;
    if (residual < params.delta_max) {
      out.converged = true;
      break;
    }
  }

  out.iterations = static_cast<int>(out.trace.size());
  out.p_ce_w = p;
  out.coeffs = approx_coeffs(sinr_pair(p, gammas, ch, params));
  out.psi = exact_ee(p, gammas, ch, params);
  out.duals = duals;
  return out;
}

}  // namespace bsnoma
