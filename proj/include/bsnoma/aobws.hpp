#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsnoma/ocetp.hpp"
#include "bsnoma/reflection.hpp"

namespace bsnoma {

/// An operating point with its exact-rate figures of merit.
struct Solution {
  double p_ce_w = 0.0;
  Pair gamma{};
  Pair sinr{};
  double rate = 0.0;  // exact sum rate, bits/s/Hz
  double p_total_w = 0.0;
  double ee = 0.0;  // rate / p_total_w, bits/Hz/J
  int iterations = 0;
  bool converged = false;
  std::optional<StageOneResult> stage_one;
  std::optional<ReflectionSolution> reflection;
  bool reflection_applied = false;  // false: Stage 2 kept the incumbent coefficients
  long long visited = 0;  // grid points evaluated (exhaustive search only)
  long long feasible_points = 0;
};

/// Names of the constraints violated at (P, Gamma): "C1", "C2" (exact-rate
/// QoS), "C3" (power range), "C4[k]" (reflection range), "C5[k]" (harvest).
std::vector<std::string> check_constraints(double p_ce_w, Pair gammas,
                                           const ScenarioChannel& channel,
                                           const SystemParams& params);

/// Fills the exact-rate fields for a given point without checking constraints.
Solution evaluate_point(double p_ce_w, Pair gammas, const ScenarioChannel& channel,
                        const SystemParams& params);

/// Stage 1 only, at fixed reflection coefficients.
Solution run_ocetp_solution(const ScenarioChannel& channel, Pair gammas,
                            const SystemParams& params);

/// Stage 1 followed by Stage 2. The Stage-2 coefficients replace gamma_init
/// only when they satisfy every constraint and do not lower the exact EE.
/// Throws InfeasibleProblem when Stage 1 is infeasible.
Solution run_aobws(const ScenarioChannel& channel, const SystemParams& params,
                   Pair gamma_init = {0.5, 0.5});

/// Stage 2 alone at a pinned CE power, with the bound anchored at
/// (p_ce_w, gamma_init) and the same acceptance rule as run_aobws.
Solution run_aobws_at_power(const ScenarioChannel& channel, double p_ce_w,
                            const SystemParams& params, Pair gamma_init = {0.5, 0.5});

}  // namespace bsnoma
