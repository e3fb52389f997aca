#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace bsnoma {

/// Per-sensor pair. Index 0 is sensor 1 (weaker estimated channel, decoded
/// last), index 1 is sensor 2 (stronger, decoded first by the reader).
using Pair = std::array<double, 2>;
using ComplexPair = std::array<std::complex<double>, 2>;

inline constexpr std::size_t kSensors = 2;

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// How the per-hop distance term enters the forward power gain |H_f|^2.
///  kPower:     |H_f|^2 = d_f^-alpha |h_f|^2 (matches the composite d_k below)
///  kAmplitude: |H_f|^2 = d_f^-2alpha |h_f|^2 (amplitude d^-alpha, squared)
enum class PathLossConvention { kPower, kAmplitude };

struct SystemParams {
  double bw_hz = 1e6;
  double sigma2_n_w = dbm_to_watt(-114.0);
  double p_max_w = 10.0;
  double xi = 0.6;
  Pair kappa{0.9, 0.9};
  double p_c_ce_w = 0.1;
  double p_c_rsu_w = 1.0;
  double p_c_rs_w = dbm_to_watt(-35.0);
  double r_min = 0.5;
  double alpha = 4.0;
  double rho = 0.005;
  Pair t_t{0.5, 0.5};
  Pair t_h{0.5, 0.5};
  /// Reflection-sum target used to freeze the stage-2 interference term.
  /// Unset: the sum of the stage-2 coefficients themselves.
  std::optional<double> theta;
  /// SIC power gap in watts. Unset: 10 * sigma2_n_w.
  std::optional<double> p_gap_w;
  double nu = 0.01;
  /// Base subgradient steps for lambda, mu_1, mu_2, beta_1, beta_2.
  std::array<double, 5> step_sizes{1e-2, 1e6, 1e6, 1e6, 1e6};
  int i_max = 50;
  double delta_max = 1e-3;
  PathLossConvention path_loss = PathLossConvention::kPower;

  double p_gap() const { return p_gap_w.value_or(10.0 * sigma2_n_w); }

  /// Throws InvalidArgument naming the first violated invariant.
  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct Positions {
  Point ce;
  Point rsu;
  std::vector<Point> sensors;
};

/// Distances for n sensors; the optimizer consumes n == 2.
struct Topology {
  std::vector<double> d_f;  // CE -> sensor, m
  std::vector<double> d_b;  // sensor -> reader, m
  std::optional<Positions> positions;

  static Topology fixed(Pair d_f, Pair d_b);
  void validate() const;
};

struct ScenarioChannel {
  ComplexPair h_f{};    // forward small-scale fading
  ComplexPair h_b{};    // backscatter small-scale fading
  ComplexPair h_est{};  // unit-variance draw behind the channel estimate
  Pair g_f{};           // |H_f|^2
  Pair d_k{};           // d_f^-alpha * d_b^-alpha
  Pair g_hat{};         // |H_hat|^2
  double sigma2_e = 0.0;  // common error variance used in the SINRs
  Pair sigma2_e_k{};      // per-sensor error variance rho * d_k
  Pair sigma2_hat{};      // (1 - rho) * d_k
  /// Topology index each slot came from (after relabeling).
  std::array<int, 2> source{0, 1};
};

/// Uniform (binomial point process) placement of n sensors in a disc of
/// `radius_m` around a CE at the origin. d_b is measured to `rsu`.
Topology place_sensors_bpp(int n, double radius_m, std::uint64_t seed,
                           Point rsu = Point{40.0, 0.0});

/// Draws Rayleigh fading for a two-sensor topology. Estimation fields are
/// left for estimate_csi.
ScenarioChannel sample_channels(const Topology& topology, const SystemParams& params,
                                std::uint64_t seed);

/// Fills the imperfect-CSI view and relabels so that g_hat[1] > g_hat[0].
ScenarioChannel estimate_csi(ScenarioChannel channel, const SystemParams& params);

/// Convenience: sample_channels followed by estimate_csi.
ScenarioChannel make_channel(const Topology& topology, const SystemParams& params,
                             std::uint64_t seed);

double incident_power(double p_ce_w, double g_f_k);

struct HarvestedPower {
  double transmission_w = 0.0;  // xi (1 - Gamma) P^I T_t
  double harvesting_w = 0.0;    // xi P^I T_h

  double total() const { return transmission_w + harvesting_w; }
};

HarvestedPower harvested_power(double p_i_w, double gamma, const SystemParams& params,
                               std::size_t k);

/// Deterministic 64-bit mix used to derive independent RNG streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace bsnoma
