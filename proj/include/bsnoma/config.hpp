#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsnoma/es_oracle.hpp"
#include "bsnoma/scenario.hpp"

namespace bsnoma {

enum class TopologyMode { kFixed, kBpp };

/// Where sensors sit for each Monte Carlo trial.
struct ScenarioConfig {
  TopologyMode mode = TopologyMode::kFixed;
  Pair d_f{10.0, 5.0};
  Pair d_b{50.0, 30.0};
  double bpp_radius_m = 5.0;
  Point rsu{40.0, 0.0};

  /// Fixed mode ignores the seed; BPP mode draws a placement from it.
  Topology topology(std::uint64_t seed) const;
};

/// variable is one of p_ce_dbm, rho, r_min, d_b, d_f. For d_b and d_f the
/// value sets the far sensor (index 0) and the configured difference to the
/// near sensor is kept.
struct SweepSpec {
  std::string variable = "p_ce_dbm";
  double start = 0.0;
  double stop = 40.0;
  double step = 2.0;
  int trials = 500;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms{"ocetp", "aobws"};
  std::string label;  // sweep_var column; empty means `variable`

  /// start, start + step, ... up to stop inclusive (within half a step).
  std::vector<double> values() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct Config {
  SystemParams params;
  ScenarioConfig scenario;
  SweepSpec sweep;
  EsConfig es;
  Pair gamma_init{0.5, 0.5};
};

/// Defaults for every field; the ES grid spans the configured power cap.
Config default_config();

/// Flat YAML mapping (JSON also parses). dBm keys are converted to watts.
/// Throws ConfigError with the key on unknown keys, bad types or ranges.
Config load_config(const std::string& path);
Config parse_config(const std::string& text);

}  // namespace bsnoma
