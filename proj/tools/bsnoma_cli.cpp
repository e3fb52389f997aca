#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsnoma/aobws.hpp"
#include "bsnoma/config.hpp"
#include "bsnoma/errors.hpp"
#include "bsnoma/es_oracle.hpp"
#include "bsnoma/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out_path;
  std::string format;
  int threads = 1;
  int figure = 0;
};

bsnoma::Config load(const Options& o) {
  bsnoma::Config cfg = o.config_path.empty() ? bsnoma::default_config()
                                             : bsnoma::load_config(o.config_path);
  if (o.seed) cfg.sweep.seed = *o.seed;
  if (o.trials) {
    if (*o.trials < 1) throw bsnoma::ConfigError("trials", "must be >= 1");
    cfg.sweep.trials = *o.trials;
  }
  cfg.es.threads = o.threads;
  return cfg;
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw bsnoma::ConfigError("out", "cannot write " + o.out_path);
  f << text;
}

nlohmann::json solution_json(const bsnoma::Solution& s) {
  nlohmann::json j{{"p_ce_w", s.p_ce_w},
                   {"gamma", s.gamma},
                   {"sinr", s.sinr},
                   {"rate_bits_s_hz", s.rate},
                   {"p_total_w", s.p_total_w},
                   {"ee_bits_hz_j", s.ee},
                   {"iterations", s.iterations},
                   {"converged", s.converged}};
  if (s.stage_one) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& r : s.stage_one->trace) {
      trace.push_back({{"psi", r.psi}, {"p_ce_w", r.p_ce_w}, {"residual", r.residual}});
    }
    j["stage_one"] = {{"p_ce_w", s.stage_one->p_ce_w}, {"psi", s.stage_one->psi}, {"trace", trace}};
  }
  if (s.reflection) {
    const auto& r = *s.reflection;
    j["reflection"] = {{"gamma", r.gamma},
                       {"case", {bsnoma::to_string(r.case_tag[0]), bsnoma::to_string(r.case_tag[1])}},
                       {"sic_adjusted", r.sic_adjusted},
                       {"nu", r.nu},
                       {"lower", r.bounds.lower},
                       {"upper", r.bounds.upper},
                       {"applied", s.reflection_applied}};
  }
  if (s.visited > 0) {
    j["visited"] = s.visited;
    j["feasible_points"] = s.feasible_points;
  }
  return j;
}

bsnoma::ScenarioChannel scenario(const bsnoma::Config& cfg) {
  const std::uint64_t seed = cfg.sweep.seed;
  return bsnoma::make_channel(cfg.scenario.topology(seed), cfg.params, seed);
}

std::string rows_text(const Options& o, const std::vector<bsnoma::SweepRow>& rows) {
  std::ostringstream ss;
  if (o.format == "json") {
    bsnoma::write_json(ss, rows);
  } else {
    bsnoma::write_csv(ss, rows);
  }
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficiency optimizer for backscatter NOMA sensors under imperfect CSI"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&o](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--config", o.config_path, "YAML or JSON configuration file");
    sub->add_option("--seed", o.seed, "Base seed (scenario seed for single runs)");
    sub->add_option("--trials", o.trials, "Monte Carlo trials per sweep value");
    sub->add_option("--out", o.out_path, "Output file (default: stdout)");
    o.format = default_format;
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 1024));
  };

  auto* optimize = app.add_subcommand("optimize", "Run AOBWS on one scenario and print JSON");
  auto* sweep = app.add_subcommand("sweep", "Run the configured sweep and print CSV");
  auto* es = app.add_subcommand("es", "Run the exhaustive grid search on one scenario");
  auto* figure = app.add_subcommand("figure", "Run a preset sweep for figure 3 to 8");
  add_common(optimize, "json");
  add_common(sweep, "csv");
  add_common(es, "json");
  add_common(figure, "csv");
  figure->add_option("number", o.figure, "Figure number")->required()->check(CLI::Range(3, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const bsnoma::Config cfg = load(o);
    if (*optimize) {
      const auto ch = scenario(cfg);
      const auto sol = bsnoma::run_aobws(ch, cfg.params, cfg.gamma_init);
      emit(o, solution_json(sol).dump(2) + "\n");
    } else if (*es) {
      const auto ch = scenario(cfg);
      const auto sol = bsnoma::es_search(ch, cfg.params, cfg.es);
      emit(o, solution_json(sol).dump(2) + "\n");
    } else if (*sweep) {
      emit(o, rows_text(o, bsnoma::run_sweep(cfg, o.threads)));
    } else if (*figure) {
      emit(o, rows_text(o, bsnoma::run_figure(o.figure, cfg, o.threads)));
    }
  } catch (const bsnoma::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const bsnoma::InfeasibleProblem& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}
