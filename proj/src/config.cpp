#include "bsnoma/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <functional>
#include <map>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

const std::vector<std::string> kVariables{"p_ce_dbm", "rho", "r_min", "d_b", "d_f"};
const std::vector<std::string> kAlgorithms{"ocetp", "aobws", "es"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError(key, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, "cannot parse '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node& node, const std::string& key) {
  const double v = scalar<double>(node, key);
  if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
  return v;
}

std::vector<double> numbers(const YAML::Node& node, const std::string& key, std::size_t n) {
  if (!node.IsSequence() || node.size() != n) {
    throw ConfigError(key, "expected a list of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(number(node[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// Accepts a scalar (applied to both sensors) or a two-element list.
Pair pair(const YAML::Node& node, const std::string& key) {
  if (node.IsScalar()) {
    const double v = number(node, key);
    return {v, v};
  }
  const auto v = numbers(node, key, 2);
  return {v[0], v[1]};
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

double positive(const YAML::Node& n, const std::string& key) {
  const double v = number(n, key);
  require(v > 0.0, key, "must be > 0");
  return v;
}

Pair positive_pair(const YAML::Node& n, const std::string& key) {
  const Pair v = pair(n, key);
  require(v[0] > 0.0 && v[1] > 0.0, key, "entries must be > 0");
  return v;
}

using Setter = std::function<void(Config&, const YAML::Node&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"bw_hz", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.bw_hz = positive(n, k); }},
      {"noise_dbm", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.sigma2_n_w = dbm_to_watt(number(n, k)); }},
      {"p_max_dbm", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.p_max_w = dbm_to_watt(number(n, k)); }},
      {"xi", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.params.xi = number(n, k);
         require(c.params.xi > 0.0 && c.params.xi <= 1.0, k, "must lie in (0, 1]");
       }},
      {"kappa", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.params.kappa = pair(n, k);
         for (double v : c.params.kappa) require(v > 0.0 && v <= 1.0, k, "entries must lie in (0, 1]");
       }},
      {"p_c_ce_w", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.p_c_ce_w = positive(n, k); }},
      {"p_c_rsu_w", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.p_c_rsu_w = positive(n, k); }},
      {"p_c_rs_dbm", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.p_c_rs_w = dbm_to_watt(number(n, k)); }},
      {"r_min", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.r_min = positive(n, k); }},
      {"alpha", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.alpha = positive(n, k); }},
      {"rho", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.params.rho = number(n, k);
         require(c.params.rho >= 0.0 && c.params.rho < 1.0, k, "must lie in [0, 1)");
       }},
      {"t_t", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.t_t = positive_pair(n, k); }},
      {"t_h", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.params.t_h = positive_pair(n, k);
       }},
      {"theta", [](Config& c, const YAML::Node& n, const std::string& k) {
         const double v = number(n, k);
         require(v > 0.0 && v <= 2.0, k, "must lie in (0, 2]");
         c.params.theta = v;
       }},
      {"p_gap_w", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.p_gap_w = positive(n, k); }},
      {"nu", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.params.nu = number(n, k);
         require(c.params.nu > 0.0 && c.params.nu < 0.5, k, "must lie in (0, 0.5)");
       }},
      {"step_sizes", [](Config& c, const YAML::Node& n, const std::string& k) {
         const auto v = numbers(n, k, 5);
         for (std::size_t i = 0; i < 5; ++i) {
           require(v[i] > 0.0, k, "entries must be > 0");
           c.params.step_sizes[i] = v[i];
         }
       }},
      {"i_max", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.params.i_max = scalar<int>(n, k);
         require(c.params.i_max >= 1, k, "must be >= 1");
       }},
      {"delta_max", [](Config& c, const YAML::Node& n, const std::string& k) { c.params.delta_max = positive(n, k); }},
      {"gamma_init", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.gamma_init = pair(n, k);
         for (double v : c.gamma_init) require(v > 0.0 && v <= 1.0, k, "entries must lie in (0, 1]");
       }},
      {"path_loss", [](Config& c, const YAML::Node& n, const std::string& k) {
         const auto v = scalar<std::string>(n, k);
         if (v == "power") c.params.path_loss = PathLossConvention::kPower;
         else if (v == "amplitude") c.params.path_loss = PathLossConvention::kAmplitude;
         else throw ConfigError(k, "expected 'power' or 'amplitude'");
       }},
      {"topology", [](Config& c, const YAML::Node& n, const std::string& k) {
         const auto v = scalar<std::string>(n, k);
         if (v == "fixed") c.scenario.mode = TopologyMode::kFixed;
         else if (v == "bpp") c.scenario.mode = TopologyMode::kBpp;
         else throw ConfigError(k, "expected 'fixed' or 'bpp'");
       }},
      {"d_f", [](Config& c, const YAML::Node& n, const std::string& k) { c.scenario.d_f = positive_pair(n, k); }},
      {"d_b", [](Config& c, const YAML::Node& n, const std::string& k) { c.scenario.d_b = positive_pair(n, k); }},
      {"bpp_radius_m", [](Config& c, const YAML::Node& n, const std::string& k) { c.scenario.bpp_radius_m = positive(n, k); }},
      {"rsu_position_m", [](Config& c, const YAML::Node& n, const std::string& k) {
         const auto v = numbers(n, k, 2);
         c.scenario.rsu = {v[0], v[1]};
       }},
      {"sweep_var", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.sweep.variable = scalar<std::string>(n, k);
         require(contains(kVariables, c.sweep.variable), k, "expected one of p_ce_dbm, rho, r_min, d_b, d_f");
       }},
      {"sweep_start", [](Config& c, const YAML::Node& n, const std::string& k) { c.sweep.start = number(n, k); }},
      {"sweep_stop", [](Config& c, const YAML::Node& n, const std::string& k) { c.sweep.stop = number(n, k); }},
      {"sweep_step", [](Config& c, const YAML::Node& n, const std::string& k) { c.sweep.step = positive(n, k); }},
      {"trials", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.sweep.trials = scalar<int>(n, k);
         require(c.sweep.trials >= 1, k, "must be >= 1");
       }},
      {"seed", [](Config& c, const YAML::Node& n, const std::string& k) { c.sweep.seed = scalar<std::uint64_t>(n, k); }},
      {"algorithms", [](Config& c, const YAML::Node& n, const std::string& k) {
         require(n.IsSequence() && n.size() > 0, k, "expected a non-empty list");
         c.sweep.algorithms.clear();
         for (const auto& a : n) {
           const auto name = scalar<std::string>(a, k);
           require(contains(kAlgorithms, name), k, "unknown algorithm '" + name + "'");
           if (!contains(c.sweep.algorithms, name)) c.sweep.algorithms.push_back(name);
         }
       }},
      {"es_p_step_w", [](Config& c, const YAML::Node& n, const std::string& k) { c.es.p_step_w = positive(n, k); }},
      {"es_gamma_step", [](Config& c, const YAML::Node& n, const std::string& k) { c.es.gamma_step = positive(n, k); }},
      {"es_gamma_max", [](Config& c, const YAML::Node& n, const std::string& k) {
         c.es.gamma_max = number(n, k);
         require(c.es.gamma_max > 0.0 && c.es.gamma_max <= 1.0, k, "must lie in (0, 1]");
       }},
  };
  return table;
}

Config from_node(const YAML::Node& root) {
  Config cfg = default_config();
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError("", "top level must be a key/value mapping");

  bool es_step_set = false;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key");
    it->second(cfg, kv.second, key);
    es_step_set = es_step_set || key == "es_p_step_w";
  }

  cfg.es.p_max_w = cfg.params.p_max_w;
  if (!es_step_set) cfg.es.p_step_w = cfg.params.p_max_w / 400.0;

  require(std::abs(cfg.params.t_t[0] + cfg.params.t_h[0] - 1.0) <= 1e-9 &&
              std::abs(cfg.params.t_t[1] + cfg.params.t_h[1] - 1.0) <= 1e-9,
          "t_t", "t_t + t_h must equal 1 for each sensor");
  require(cfg.params.p_max_w > 0.0, "p_max_dbm", "must give a positive power");
  require(cfg.es.p_step_w <= cfg.es.p_max_w, "es_p_step_w", "must not exceed the power cap");
  require(cfg.es.gamma_step <= cfg.es.gamma_max, "es_gamma_step", "must not exceed es_gamma_max");
  try {
    cfg.params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("", e.what());
  }
  cfg.sweep.validate();
  if (cfg.sweep.variable == "p_ce_dbm") {
    for (double v : cfg.sweep.values()) {
      require(dbm_to_watt(v) <= cfg.params.p_max_w * (1.0 + 1e-12), "sweep_stop",
              "swept CE power exceeds p_max_dbm");
    }
  }
  if ((cfg.sweep.variable == "d_b" || cfg.sweep.variable == "d_f") &&
      cfg.scenario.mode == TopologyMode::kBpp) {
    throw ConfigError("sweep_var", "distance sweeps need topology = fixed");
  }
  return cfg;
}

}  // namespace

Topology ScenarioConfig::topology(std::uint64_t seed) const {
  if (mode == TopologyMode::kFixed) return Topology::fixed(d_f, d_b);
  return place_sensors_bpp(2, bpp_radius_m, seed, rsu);
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  if (!(step > 0.0) || stop < start) return out;
  const auto n = static_cast<long long>(std::floor((stop - start) / step + 0.5));
  for (long long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void SweepSpec::validate() const {
  if (!contains(kVariables, variable)) throw ConfigError("sweep_var", "unknown sweep variable");
  if (!(step > 0.0)) throw ConfigError("sweep_step", "must be > 0");
  if (!(stop >= start)) throw ConfigError("sweep_stop", "must be >= sweep_start");
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (algorithms.empty()) throw ConfigError("algorithms", "at least one algorithm is required");
  for (const auto& a : algorithms) {
    if (!contains(kAlgorithms, a)) throw ConfigError("algorithms", "unknown algorithm '" + a + "'");
  }
  if (variable == "rho") {
    if (!(start >= 0.0) || !(stop < 1.0)) throw ConfigError("sweep_start", "rho must lie in [0, 1)");
  }
  if (variable == "r_min" && !(start > 0.0)) throw ConfigError("sweep_start", "r_min must be > 0");
  if ((variable == "d_b" || variable == "d_f") && !(start > 0.0)) {
    throw ConfigError("sweep_start", "distances must be > 0");
  }
}

Config default_config() {
  Config cfg;
  cfg.es = default_es_config(cfg.params);
  return cfg;
}

Config parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("parse error: ") + e.what());
  }
  return from_node(root);
}

Config load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("", "cannot open " + path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", path + ": parse error: " + e.what());
  }
  return from_node(root);
}

}  // namespace bsnoma
