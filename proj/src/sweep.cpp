#include "bsnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "bsnoma/aobws.hpp"
#include "bsnoma/errors.hpp"
#include "bsnoma/es_oracle.hpp"

namespace bsnoma {

namespace {

struct TrialResult {
  bool feasible = false;
  double ee = 0.0, rate = 0.0, p_ce_w = 0.0, gamma1 = 0.0, gamma2 = 0.0;
  int iterations = 0;
  std::vector<double> trace;
};

bool iterates(const std::string& algorithm, const std::string& variable) {
  return algorithm != "es" && variable != "p_ce_dbm";
}

Solution run_algorithm(const std::string& algorithm, const ScenarioChannel& ch, const Config& cfg,
                       std::optional<double> pinned_p) {
  const auto& params = cfg.params;
  if (algorithm == "ocetp") {
    if (!pinned_p) return run_ocetp_solution(ch, cfg.gamma_init, params);
    const auto violated = check_constraints(*pinned_p, cfg.gamma_init, ch, params);
    if (!violated.empty()) throw InfeasibleProblem(violated.front(), violated.front());
    return evaluate_point(*pinned_p, cfg.gamma_init, ch, params);
  }
  if (algorithm == "aobws") {
    return pinned_p ? run_aobws_at_power(ch, *pinned_p, params, cfg.gamma_init)
                    : run_aobws(ch, params, cfg.gamma_init);
  }
  return pinned_p ? es_search_at_power(ch, *pinned_p, params, cfg.es) : es_search(ch, params, cfg.es);
}

TrialResult run_trial(const std::string& algorithm, const Config& cfg, double value, int trial) {
  const std::uint64_t seed = trial_seed(cfg.sweep.seed, trial);
  const ScenarioChannel ch = make_channel(cfg.scenario.topology(seed), cfg.params, seed);
  std::optional<double> pinned;
  if (cfg.sweep.variable == "p_ce_dbm") pinned = std::min(dbm_to_watt(value), cfg.params.p_max_w);

  TrialResult r;
  Solution s;
  try {
    s = run_algorithm(algorithm, ch, cfg, pinned);
  } catch (const InfeasibleProblem&) {
    return r;
  }
  r.feasible = true;
  r.ee = s.ee;
  r.rate = s.rate;
  r.p_ce_w = s.p_ce_w;
  r.gamma1 = s.gamma[0];
  r.gamma2 = s.gamma[1];
  r.iterations = s.iterations;
  if (s.stage_one) {
    for (const auto& rec : s.stage_one->trace) r.trace.push_back(rec.psi);
  }
  return r;
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

SweepRow aggregate(const std::string& label, double value, const std::string& algorithm,
                   bool with_iters, const std::vector<TrialResult>& trials) {
  SweepRow row;
  row.sweep_var = label;
  row.sweep_value = value;
  row.algorithm = algorithm;
  row.trials = static_cast<int>(trials.size());

  std::vector<double> ee, rate, p, g1, g2, it;
  std::size_t trace_len = 0;
  for (const auto& t : trials) {
    if (!t.feasible) continue;
    ++row.feasible;
    ee.push_back(t.ee);
    rate.push_back(t.rate);
    p.push_back(t.p_ce_w);
    g1.push_back(t.gamma1);
    g2.push_back(t.gamma2);
    it.push_back(static_cast<double>(t.iterations));
    trace_len = std::max(trace_len, t.trace.size());
  }
  row.mean_ee = mean_of(ee);
  row.mean_rate = mean_of(rate);
  row.mean_pce_w = mean_of(p);
  row.mean_gamma1 = mean_of(g1);
  row.mean_gamma2 = mean_of(g2);
  if (with_iters) row.mean_iters = mean_of(it);

  for (std::size_t i = 0; i < trace_len; ++i) {
    std::vector<double> col;
    for (const auto& t : trials) {
      if (t.feasible && !t.trace.empty()) col.push_back(t.trace[std::min(i, t.trace.size() - 1)]);
    }
    row.mean_trace.push_back(*mean_of(col));
  }
  return row;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string format_value(double v) {
  // Sweep values are generated as start + i * step; trimming to 12 digits
  // prints 0.003 instead of 0.0030000000000000001.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Config family(const Config& base, const std::string& variable, double start, double stop,
              double step, std::vector<std::string> algorithms, const std::string& label) {
  Config c = base;
  c.sweep.variable = variable;
  c.sweep.start = start;
  c.sweep.stop = stop;
  c.sweep.step = step;
  c.sweep.algorithms = std::move(algorithms);
  c.sweep.label = label;
  c.es.p_max_w = c.params.p_max_w;
  c.es.p_step_w = c.params.p_max_w / 100.0;
  c.es.gamma_step = 0.02;
  c.es.gamma_max = 1.0;
  return c;
}

std::string tag(const char* name, double v) { return std::string(name) + "=" + format_value(v); }

std::string tag(const char* name, Pair v) {
  return std::string(name) + "=(" + format_value(v[0]) + ";" + format_value(v[1]) + ")";
}

}  // namespace

const char* const kCsvHeader =
    "sweep_var,sweep_value,algorithm,mean_ee_bits_hz_j,mean_rate,mean_pce_w,mean_gamma1,"
    "mean_gamma2,feasible_frac,trials,mean_iters";

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return base_seed + static_cast<std::uint64_t>(trial);
}

Config apply_sweep_value(const Config& cfg, double value) {
  Config c = cfg;
  const std::string& var = cfg.sweep.variable;
  if (var == "rho") {
    if (!(value >= 0.0 && value < 1.0)) throw ConfigError("rho", "swept value outside [0, 1)");
    c.params.rho = value;
  } else if (var == "r_min") {
    if (!(value > 0.0)) throw ConfigError("r_min", "swept value must be > 0");
    c.params.r_min = value;
  } else if (var == "d_b" || var == "d_f") {
    Pair& d = var == "d_b" ? c.scenario.d_b : c.scenario.d_f;
    const double near = value - (d[0] - d[1]);
    if (!(value > 0.0 && near > 0.0)) throw ConfigError(var, "swept distance must stay > 0");
    d = {value, near};
  }
  return c;
}

std::vector<SweepRow> run_sweep(const Config& cfg, int threads) {
  cfg.sweep.validate();
  const std::vector<double> values = cfg.sweep.values();
  const auto& algorithms = cfg.sweep.algorithms;
  const int trials = cfg.sweep.trials;

  std::vector<Config> configs;
  for (double v : values) configs.push_back(apply_sweep_value(cfg, v));

  const std::size_t per_value = algorithms.size() * static_cast<std::size_t>(trials);
  const std::size_t total = values.size() * per_value;
  std::vector<TrialResult> results(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t v = i / per_value;
      const std::size_t a = (i % per_value) / static_cast<std::size_t>(trials);
      const int t = static_cast<int>(i % static_cast<std::size_t>(trials));
      try {
        results[i] = run_trial(algorithms[a], configs[v], values[v], t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  const std::string label = cfg.sweep.label.empty() ? cfg.sweep.variable : cfg.sweep.label;
  std::vector<SweepRow> rows;
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      const auto begin = results.begin() + static_cast<std::ptrdiff_t>(v * per_value + a * trials);
      std::vector<TrialResult> slice(begin, begin + trials);
      rows.push_back(aggregate(label, values[v], algorithms[a],
                               iterates(algorithms[a], cfg.sweep.variable), slice));
    }
  }
  return rows;
}

std::vector<Config> figure_configs(int figure, const Config& base) {
  const std::vector<double> rhos{0.001, 0.005, 0.009};
  std::vector<Config> out;
  switch (figure) {
    case 3:
      out.push_back(family(base, "p_ce_dbm", 0.0, 40.0, 2.0, {"ocetp", "aobws"}, "p_ce_dbm"));
      break;
    case 4:
      out.push_back(family(base, "rho", 0.001, 0.009, 0.004, {"ocetp"}, "rho"));
      break;
    case 5:
      for (double rho : rhos) {
        Config c = family(base, "p_ce_dbm", 0.0, 40.0, 2.0, {"aobws"}, "p_ce_dbm[" + tag("rho", rho) + "]");
        c.params.rho = rho;
        out.push_back(c);
      }
      break;
    case 6:
      for (Pair d_b : {Pair{50.0, 30.0}, Pair{40.0, 20.0}}) {
        Config c = family(base, "rho", 0.001, 0.009, 0.001, {"aobws", "es"}, "rho[" + tag("d_b", d_b) + "]");
        c.scenario.mode = TopologyMode::kFixed;
        c.scenario.d_b = d_b;
        out.push_back(c);
      }
      break;
    case 7:
      for (Pair d_f : {Pair{10.0, 5.0}, Pair{15.0, 10.0}}) {
        Config c = family(base, "rho", 0.001, 0.009, 0.001, {"aobws", "es"}, "rho[" + tag("d_f", d_f) + "]");
        c.scenario.mode = TopologyMode::kFixed;
        c.scenario.d_f = d_f;
        out.push_back(c);
      }
      break;
    case 8:
      for (double rho : rhos) {
        Config c = family(base, "r_min", 0.1, 1.0, 0.1, {"ocetp", "aobws"}, "r_min[" + tag("rho", rho) + "]");
        c.params.rho = rho;
        c.scenario.mode = TopologyMode::kFixed;
        c.scenario.d_f = {10.0, 5.0};
        c.scenario.d_b = {50.0, 30.0};
        out.push_back(c);
      }
      break;
    default:
      throw ConfigError("figure", "expected a figure number from 3 to 8");
  }
  return out;
}

std::vector<SweepRow> run_figure(int figure, const Config& base, int threads) {
  std::vector<SweepRow> rows;
  for (const Config& c : figure_configs(figure, base)) {
    auto part = run_sweep(c, threads);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.sweep_var << ',' << format_value(r.sweep_value) << ',' << r.algorithm << ','
        << format_optional(r.mean_ee) << ',' << format_optional(r.mean_rate) << ','
        << format_optional(r.mean_pce_w) << ',' << format_optional(r.mean_gamma1) << ','
        << format_optional(r.mean_gamma2) << ',' << format_double(r.feasible_frac()) << ','
        << r.trials << ',' << format_optional(r.mean_iters) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<SweepRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"sweep_var", r.sweep_var},
                   {"sweep_value", r.sweep_value},
                   {"algorithm", r.algorithm},
                   {"mean_ee_bits_hz_j", opt(r.mean_ee)},
                   {"mean_rate", opt(r.mean_rate)},
                   {"mean_pce_w", opt(r.mean_pce_w)},
                   {"mean_gamma1", opt(r.mean_gamma1)},
                   {"mean_gamma2", opt(r.mean_gamma2)},
                   {"feasible_frac", r.feasible_frac()},
                   {"trials", r.trials},
                   {"mean_iters", opt(r.mean_iters)},
                   {"mean_trace", r.mean_trace}});
  }
  out << arr.dump(2) << '\n';
}

}  // namespace bsnoma
