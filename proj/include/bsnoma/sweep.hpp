#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bsnoma/config.hpp"

namespace bsnoma {

/// One (sweep value, algorithm) aggregate. Means are over feasible trials
/// only and are empty when no trial was feasible.
struct SweepRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::string algorithm;
  std::optional<double> mean_ee;
  std::optional<double> mean_rate;
  std::optional<double> mean_pce_w;
  std::optional<double> mean_gamma1;
  std::optional<double> mean_gamma2;
  std::optional<double> mean_iters;  // only for algorithms that iterate
  int trials = 0;
  int feasible = 0;
  /// Mean Dinkelbach parameter per Stage-1 iteration; trials that stopped
  /// early contribute their final value.
  std::vector<double> mean_trace;

  double feasible_frac() const { return trials > 0 ? static_cast<double>(feasible) / trials : 0.0; }
};

/// Channel seed of a trial. Every sweep value reuses the same draws.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

/// Applies one sweep value to a copy of the configuration.
Config apply_sweep_value(const Config& cfg, double value);

/// Rows ordered by sweep value, then by the order of `cfg.sweep.algorithms`.
/// Output is independent of `threads`.
std::vector<SweepRow> run_sweep(const Config& cfg, int threads = 1);

/// Preset sweep families reproducing the figure data sets 3 to 8; the base
/// configuration supplies system parameters, trials and seed.
std::vector<Config> figure_configs(int figure, const Config& base);
std::vector<SweepRow> run_figure(int figure, const Config& base, int threads = 1);

extern const char* const kCsvHeader;

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_json(std::ostream& out, const std::vector<SweepRow>& rows);

/// Pairwise summation; deterministic for a fixed input order.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace bsnoma
