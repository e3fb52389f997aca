#pragma once

#include <cstdint>
#include <vector>

#include "bsnoma/aobws.hpp"
#include "bsnoma/config.hpp"
#include "bsnoma/errors.hpp"
#include "oracles.hpp"

namespace fixtures {

inline oracle::Link link_of(const bsnoma::ScenarioChannel& ch, const bsnoma::SystemParams& p) {
  return {ch.g_hat[0], ch.g_hat[1], ch.g_f[0], ch.g_f[1], ch.sigma2_e, p.sigma2_n_w};
}

inline oracle::Budget budget_of(const bsnoma::SystemParams& p) {
  return {p.t_t[0], p.t_t[1], p.t_h[0], p.t_h[1], p.kappa[0], p.kappa[1], p.p_c_ce_w, p.p_c_rsu_w};
}

/// Channel on the fixed reference topology d_f = (10, 5), d_b = (50, 30).
inline bsnoma::ScenarioChannel reference_channel(const bsnoma::SystemParams& params,
                                                 std::uint64_t seed) {
  return bsnoma::make_channel(bsnoma::Topology::fixed({10.0, 5.0}, {50.0, 30.0}), params, seed);
}

struct Scenario {
  std::uint64_t seed = 0;
  bsnoma::ScenarioChannel channel;
};

/// First `count` seeds from `first_seed` on whose scenario AOBWS is feasible.
/// BPP placement in the configured disc when `bpp` is set, otherwise the
/// reference topology.
inline std::vector<Scenario> feasible_scenarios(int count, std::uint64_t first_seed,
                                                const bsnoma::SystemParams& params, bool bpp) {
  bsnoma::ScenarioConfig sc;
  sc.mode = bpp ? bsnoma::TopologyMode::kBpp : bsnoma::TopologyMode::kFixed;
  std::vector<Scenario> out;
  for (std::uint64_t seed = first_seed; static_cast<int>(out.size()) < count; ++seed) {
    auto ch = bsnoma::make_channel(sc.topology(seed), params, seed);
    try {
      bsnoma::run_aobws(ch, params);
    } catch (const bsnoma::InfeasibleProblem&) {
      continue;
    }
    out.push_back({seed, ch});
  }
  return out;
}

}  // namespace fixtures
