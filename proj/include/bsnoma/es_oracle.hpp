#pragma once

#include "bsnoma/aobws.hpp"

namespace bsnoma {

/// Grid P_i = min(i * p_step_w, p_max_w), i = 1..ceil(p_max_w / p_step_w),
/// and likewise for each reflection coefficient up to gamma_max.
struct EsConfig {
  double p_step_w = 10.0 / 400.0;
  double gamma_step = 0.005;
  double p_max_w = 10.0;
  double gamma_max = 1.0;
  int threads = 1;

  void validate() const;
  long long power_points() const;
  long long gamma_points() const;
};

/// Default grid for a given power cap: p_max / 400 and a 0.005 reflection step.
EsConfig default_es_config(const SystemParams& params);

/// Exhaustive search maximizing the exact-rate EE over the feasible grid
/// points. Ties keep the lowest (P, Gamma_1, Gamma_2) in lexicographic order,
/// so the result does not depend on the thread count. Throws
/// InfeasibleProblem when no grid point is feasible.
Solution es_search(const ScenarioChannel& channel, const SystemParams& params,
                   const EsConfig& es);

/// Same search with P pinned to a single value.
Solution es_search_at_power(const ScenarioChannel& channel, double p_ce_w,
                            const SystemParams& params, const EsConfig& es);

}  // namespace bsnoma
