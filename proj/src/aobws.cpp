#include "bsnoma/aobws.hpp"

#include <cmath>
#include <optional>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

void require_feasible(const Solution& s, const ScenarioChannel& ch, const SystemParams& params) {
  const auto violated = check_constraints(s.p_ce_w, s.gamma, ch, params);
  if (!violated.empty()) {
    throw InfeasibleProblem(violated.front(),
                            violated.front() + ": violated at the returned operating point");
  }
}

// Stage 2 is accepted only when it does not lower the exact EE of the
// incumbent (P, gamma_init); otherwise, or when its bounds are empty, the
// incumbent is kept. `incumbent_ok` is false when (P, gamma_init) itself
// violates a constraint.
Solution stage_two(const ScenarioChannel& ch, double p, const ApproxCoeffs& coeffs,
                   Pair gamma_init, const SystemParams& params) {
  Solution incumbent = evaluate_point(p, gamma_init, ch, params);
  const bool incumbent_ok = check_constraints(p, gamma_init, ch, params).empty();

  std::optional<Solution> candidate;
  try {
    const ReflectionBounds bounds = gamma_bounds(p, ch, coeffs, params);
    ReflectionSolution refl = optimal_reflection(bounds, ch, p, coeffs, params);
    Solution s = evaluate_point(p, refl.gamma, ch, params);
    s.reflection = std::move(refl);
    s.reflection_applied = true;
    if (check_constraints(s.p_ce_w, s.gamma, ch, params).empty()) candidate = std::move(s);
  } catch (const InfeasibleProblem&) {
    if (!incumbent_ok) throw;
  }

  if (candidate && (!incumbent_ok || candidate->ee >= incumbent.ee)) return *candidate;
  if (!incumbent_ok) {
    require_feasible(incumbent, ch, params);
  }
  return incumbent;
}

}  // namespace

std::vector<std::string> check_constraints(double p, Pair gammas, const ScenarioChannel& ch,
                                           const SystemParams& params) {
  std::vector<std::string> out;
  if (!(p >= 0.0 && p <= params.p_max_w)) out.emplace_back("C3");
  for (std::size_t k = 0; k < kSensors; ++k) {
    if (!(gammas[k] > 0.0 && gammas[k] <= 1.0)) out.push_back("C4[" + std::to_string(k + 1) + "]");
  }
  if (!out.empty()) return out;

  const Pair sinr = sinr_pair(p, gammas, ch, params);
  for (std::size_t k = 0; k < kSensors; ++k) {
    if (!(params.t_t[k] * std::log2(1.0 + sinr[k]) >= params.r_min)) {
      out.push_back("C" + std::to_string(k + 1));
    }
  }
  for (std::size_t k = 0; k < kSensors; ++k) {
    const HarvestedPower h = harvested_power(incident_power(p, ch.g_f[k]), gammas[k], params, k);
    if (!(h.total() >= params.p_c_rs_w * params.t_t[k])) {
      out.push_back("C5[" + std::to_string(k + 1) + "]");
    }
  }
  return out;
}

Solution evaluate_point(double p, Pair gammas, const ScenarioChannel& ch,
                        const SystemParams& params) {
  Solution s;
  s.p_ce_w = p;
  s.gamma = gammas;
  s.sinr = sinr_pair(p, gammas, ch, params);
  s.rate = sum_rate_exact(s.sinr, params);
  s.p_total_w = total_power(p, params);
  s.ee = energy_efficiency(s.rate, s.p_total_w);
  return s;
}

Solution run_ocetp_solution(const ScenarioChannel& ch, Pair gammas, const SystemParams& params) {
  StageOneResult s1 = run_ocetp(ch, gammas, params);
  Solution s = evaluate_point(s1.p_ce_w, gammas, ch, params);
  s.iterations = s1.iterations;
  s.converged = s1.converged;
  s.stage_one = std::move(s1);
  require_feasible(s, ch, params);
  return s;
}

Solution run_aobws(const ScenarioChannel& ch, const SystemParams& params, Pair gamma_init) {
  StageOneResult s1 = run_ocetp(ch, gamma_init, params);
  Solution s = stage_two(ch, s1.p_ce_w, s1.coeffs, gamma_init, params);
  s.iterations = s1.iterations;
  s.converged = s1.converged;
  s.stage_one = std::move(s1);
  return s;
}

Solution run_aobws_at_power(const ScenarioChannel& ch, double p, const SystemParams& params,
                            Pair gamma_init) {
  params.validate();
  if (!(p > 0.0 && p <= params.p_max_w)) {
    throw InvalidArgument("run_aobws_at_power: p_ce_w must lie in (0, p_max_w]");
  }
  const ApproxCoeffs coeffs = approx_coeffs(sinr_pair(p, gamma_init, ch, params));
  Solution s = stage_two(ch, p, coeffs, gamma_init, params);
  s.converged = true;
  return s;
}

}  // namespace bsnoma
