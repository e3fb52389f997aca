#include "bsnoma/es_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

long long grid_count(double extent, double step) {
  // Guards against extent / step landing a few ulps above an integer.
  return static_cast<long long>(std::ceil(extent / step * (1.0 - 1e-12)));
}

double grid_value(long long i, double step, double extent) {
  return std::min(static_cast<double>(i) * step, extent);
}

struct Best {
  double ee = -1.0;
  double p = 0.0;
  Pair gamma{};
  long long feasible = 0;
  bool found = false;
};

void search_power_range(const ScenarioChannel& ch, const SystemParams& params,
                        const std::vector<double>& powers, const std::vector<double>& gammas,
                        std::size_t begin, std::size_t end, Best& best) {
  const double rsq = params.r_min;
  const std::size_t ng = gammas.size();
  std::vector<char> harvest_ok(2 * ng);
  for (std::size_t ip = begin; ip < end; ++ip) {
    const double p = powers[ip];
    const double p_total = total_power(p, params);
    for (std::size_t k = 0; k < kSensors; ++k) {
      const double p_i = incident_power(p, ch.g_f[k]);
      for (std::size_t j = 0; j < ng; ++j) {
        harvest_ok[k * ng + j] =
            harvested_power(p_i, gammas[j], params, k).total() >= params.p_c_rs_w * params.t_t[k];
      }
    }
    for (std::size_t j1 = 0; j1 < ng; ++j1) {
      if (!harvest_ok[j1]) continue;
      const double s1 = p * gammas[j1] * ch.g_hat[0];
      for (std::size_t j2 = 0; j2 < ng; ++j2) {
        if (!harvest_ok[ng + j2]) continue;
        const double s2 = p * gammas[j2] * ch.g_hat[1];
        const double noise = ch.sigma2_e * p * (gammas[j1] + gammas[j2]) + params.sigma2_n_w;
        const double r1 = params.t_t[0] * std::log2(1.0 + s1 / noise);
        const double r2 = params.t_t[1] * std::log2(1.0 + s2 / (s1 + noise));
        if (!(r1 >= rsq) || !(r2 >= rsq)) continue;
        ++best.feasible;
        const double ee = (r1 + r2) / p_total;
        if (!best.found || ee > best.ee) {
          best = Best{ee, p, {gammas[j1], gammas[j2]}, best.feasible, true};
        }
      }
    }
  }
}

Solution run_grid(const ScenarioChannel& ch, const SystemParams& params, const EsConfig& es,
                  const std::vector<double>& powers) {
  params.validate();
  es.validate();
  std::vector<double> gammas(static_cast<std::size_t>(es.gamma_points()));
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    gammas[j] = grid_value(static_cast<long long>(j) + 1, es.gamma_step, es.gamma_max);
  }

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(es.threads, 1)), 1, powers.size());
  std::vector<Best> partial(workers);
  const std::size_t chunk = (powers.size() + workers - 1) / workers;
  auto range = [&](std::size_t w) {
    const std::size_t b = std::min(powers.size(), w * chunk);
    return std::pair{b, std::min(powers.size(), b + chunk)};
  };
  if (workers == 1) {
    search_power_range(ch, params, powers, gammas, 0, powers.size(), partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const auto [b, e] = range(w);
      pool.emplace_back([&, w, b = b, e = e] {
        search_power_range(ch, params, powers, gammas, b, e, partial[w]);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Chunks are contiguous and ascending in P, so a strict comparison keeps
  // the lexicographically lowest point among ties.
  Best best;
  long long feasible = 0;
  for (const Best& b : partial) {
    feasible += b.feasible;
    if (b.found && (!best.found || b.ee > best.ee)) best = b;
  }
  if (!best.found) throw InfeasibleProblem("grid", "grid: no feasible grid point");

  Solution s = evaluate_point(best.p, best.gamma, ch, params);
  s.visited = static_cast<long long>(powers.size()) * static_cast<long long>(gammas.size()) *
              static_cast<long long>(gammas.size());
  s.feasible_points = feasible;
  s.converged = true;
  return s;
}

}  // namespace

void EsConfig::validate() const {
  if (!(p_step_w > 0.0 && p_step_w <= p_max_w)) {
    throw InvalidArgument("EsConfig: require 0 < p_step_w <= p_max_w");
  }
  if (!(gamma_step > 0.0 && gamma_step <= gamma_max && gamma_max <= 1.0)) {
    throw InvalidArgument("EsConfig: require 0 < gamma_step <= gamma_max <= 1");
  }
}

long long EsConfig::power_points() const { return grid_count(p_max_w, p_step_w); }
long long EsConfig::gamma_points() const { return grid_count(gamma_max, gamma_step); }

EsConfig default_es_config(const SystemParams& params) {
  EsConfig es;
  es.p_max_w = params.p_max_w;
  es.p_step_w = params.p_max_w / 400.0;
  return es;
}

Solution es_search(const ScenarioChannel& ch, const SystemParams& params, const EsConfig& es) {
  es.validate();
  if (es.p_max_w > params.p_max_w) {
    throw InvalidArgument("es_search: grid extends beyond p_max_w");
  }
  std::vector<double> powers(static_cast<std::size_t>(es.power_points()));
  for (std::size_t i = 0; i < powers.size(); ++i) {
    powers[i] = grid_value(static_cast<long long>(i) + 1, es.p_step_w, es.p_max_w);
  }
  return run_grid(ch, params, es, powers);
}

Solution es_search_at_power(const ScenarioChannel& ch, double p, const SystemParams& params,
                            const EsConfig& es) {
  if (!(p > 0.0 && p <= params.p_max_w)) {
    throw InvalidArgument("es_search_at_power: p_ce_w must lie in (0, p_max_w]");
  }
  EsConfig single = es;
  single.threads = 1;
  return run_grid(ch, params, single, {p});
}

}  // namespace bsnoma
