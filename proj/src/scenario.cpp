#include "bsnoma/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "bsnoma/errors.hpp"

namespace bsnoma {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

std::complex<double> draw_cn(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

constexpr std::uint64_t kStreamFading = 0x66616465ULL;
constexpr std::uint64_t kStreamPlacement = 0x706c6163ULL;

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void SystemParams::validate() const {
  require(bw_hz > 0.0, "bw_hz must be > 0");
  require(sigma2_n_w > 0.0, "sigma2_n_w must be > 0");
  require(p_max_w > 0.0, "p_max_w must be > 0");
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  for (std::size_t k = 0; k < kSensors; ++k) {
    const std::string idx = "[" + std::to_string(k + 1) + "]";
    require(kappa[k] > 0.0 && kappa[k] <= 1.0, "kappa" + idx + " must lie in (0, 1]");
    require(t_t[k] > 0.0 && t_h[k] > 0.0, "t_t" + idx + " and t_h" + idx + " must be > 0");
    require(std::abs(t_t[k] + t_h[k] - 1.0) <= 1e-9, "t_t" + idx + " + t_h" + idx + " must equal 1");
  }
  require(p_c_ce_w > 0.0 && p_c_rsu_w > 0.0 && p_c_rs_w > 0.0, "circuit powers must be > 0");
  require(rho >= 0.0 && rho < 1.0, "rho must lie in [0, 1)");
  require(r_min > 0.0, "r_min must be > 0");
  require(alpha >= 0.0, "alpha must be >= 0");
  require(nu > 0.0 && nu < 1.0, "nu must lie in (0, 1)");
  require(!theta || *theta > 0.0, "theta must be > 0");
  require(!p_gap_w || *p_gap_w > 0.0, "p_gap_w must be > 0");
  for (double w : step_sizes) require(w > 0.0, "step sizes must be > 0");
  require(i_max >= 1, "i_max must be >= 1");
  require(delta_max > 0.0, "delta_max must be > 0");
}

Topology Topology::fixed(Pair d_f, Pair d_b) {
  Topology t;
  t.d_f.assign(d_f.begin(), d_f.end());
  t.d_b.assign(d_b.begin(), d_b.end());
  t.validate();
  return t;
}

void Topology::validate() const {
  require(!d_f.empty() && d_f.size() == d_b.size(), "topology needs matching d_f/d_b");
  for (std::size_t k = 0; k < d_f.size(); ++k) {
    require(d_f[k] > 0.0 && d_b[k] > 0.0, "topology distances must be > 0");
  }
  if (positions) {
    require(positions->sensors.size() == d_f.size(), "positions/distances size mismatch");
    for (std::size_t k = 0; k < d_f.size(); ++k) {
      const double df = distance(positions->ce, positions->sensors[k]);
      const double db = distance(positions->rsu, positions->sensors[k]);
      require(std::abs(df - d_f[k]) <= 1e-9 * df && std::abs(db - d_b[k]) <= 1e-9 * db,
              "distances disagree with positions");
    }
  }
}

Topology place_sensors_bpp(int n, double radius_m, std::uint64_t seed, Point rsu) {
  require(n >= 1, "place_sensors_bpp: n must be >= 1");
  require(radius_m > 0.0, "place_sensors_bpp: radius must be > 0");

  std::mt19937_64 rng(mix_seed(seed, kStreamPlacement));
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Positions pos;
  pos.ce = Point{0.0, 0.0};
  pos.rsu = rsu;
  pos.sensors.reserve(static_cast<std::size_t>(n));

  Topology t;
  for (int i = 0; i < n; ++i) {
    // sqrt of a uniform radius fraction gives uniform area density
    double r = radius_m * std::sqrt(u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    if (r <= 0.0) r = radius_m * 1e-9;
    const Point s{r * std::cos(phi), r * std::sin(phi)};
    pos.sensors.push_back(s);
    t.d_f.push_back(distance(pos.ce, s));
    t.d_b.push_back(distance(pos.rsu, s));
  }
  t.positions = std::move(pos);
  return t;
}

ScenarioChannel sample_channels(const Topology& topology, const SystemParams& params,
                                std::uint64_t seed) {
  topology.validate();
  require(topology.d_f.size() == kSensors, "sample_channels: exactly two sensors required");
  require(params.alpha >= 0.0, "sample_channels: alpha must be >= 0");

  std::mt19937_64 rng(mix_seed(seed, kStreamFading));
  ScenarioChannel ch;
  for (std::size_t k = 0; k < kSensors; ++k) {
    ch.h_f[k] = draw_cn(rng);
    ch.h_b[k] = draw_cn(rng);
    ch.h_est[k] = draw_cn(rng);
  }
  for (std::size_t k = 0; k < kSensors; ++k) {
    const double lf = std::pow(topology.d_f[k], -params.alpha);
    const double lb = std::pow(topology.d_b[k], -params.alpha);
    const double forward_loss =
        params.path_loss == PathLossConvention::kAmplitude ? lf * lf : lf;
    ch.g_f[k] = forward_loss * std::norm(ch.h_f[k]);
    ch.d_k[k] = lf * lb;
  }
  return ch;
}

ScenarioChannel estimate_csi(ScenarioChannel ch, const SystemParams& params) {
  require(params.rho >= 0.0 && params.rho < 1.0, "estimate_csi: rho must lie in [0, 1)");

  // Constant error variance taken from the far sensor (smaller d_k).
  const double d_far = std::min(ch.d_k[0], ch.d_k[1]);
  ch.sigma2_e = params.rho * d_far;
  for (std::size_t k = 0; k < kSensors; ++k) {
    ch.sigma2_e_k[k] = params.rho * ch.d_k[k];
    ch.sigma2_hat[k] = (1.0 - params.rho) * ch.d_k[k];
    ch.g_hat[k] = ch.sigma2_hat[k] * std::norm(ch.h_est[k]);
  }

  if (ch.g_hat[0] > ch.g_hat[1]) {
    std::swap(ch.h_f[0], ch.h_f[1]);
    std::swap(ch.h_b[0], ch.h_b[1]);
    std::swap(ch.h_est[0], ch.h_est[1]);
    std::swap(ch.g_f[0], ch.g_f[1]);
    std::swap(ch.d_k[0], ch.d_k[1]);
    std::swap(ch.g_hat[0], ch.g_hat[1]);
    std::swap(ch.sigma2_e_k[0], ch.sigma2_e_k[1]);
    std::swap(ch.sigma2_hat[0], ch.sigma2_hat[1]);
    std::swap(ch.source[0], ch.source[1]);
  }
  return ch;
}

ScenarioChannel make_channel(const Topology& topology, const SystemParams& params,
                             std::uint64_t seed) {
  return estimate_csi(sample_channels(topology, params, seed), params);
}

double incident_power(double p_ce_w, double g_f_k) {
  require(p_ce_w >= 0.0, "incident_power: p_ce_w must be >= 0");
  return p_ce_w * g_f_k;
}

HarvestedPower harvested_power(double p_i_w, double gamma, const SystemParams& params,
                               std::size_t k) {
  require(gamma > 0.0 && gamma <= 1.0, "harvested_power: gamma must lie in (0, 1]");
  require(p_i_w >= 0.0, "harvested_power: incident power must be >= 0");
  require(k < kSensors, "harvested_power: sensor index out of range");
  return {params.xi * (1.0 - gamma) * p_i_w * params.t_t[k],
          params.xi * p_i_w * params.t_h[k]};
}

}  // namespace bsnoma
