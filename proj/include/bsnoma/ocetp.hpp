#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsnoma/rate_model.hpp"
#include "bsnoma/scenario.hpp"

namespace bsnoma {

/// Lagrange multipliers of the power subproblem: lambda for the power cap,
/// mu for the two QoS constraints, beta for the two circuit-power constraints.
struct DualState {
  double lambda = 0.0;
  Pair mu{};
  Pair beta{};
  int iter = 0;  // number of completed updates
};

/// Aggregates of the stationarity condition dL/dP = 0 and the cubic it
/// reduces to, a P^3 + b P^2 + c P + d = 0 (bandwidth normalized to 1).
struct CardanoCoeffs {
  double cap_a = 0.0;  // T_t,1 Pi_1 sigma_n^2
  double cap_b = 0.0;  // sigma_e^2 (Gamma_1 + Gamma_2)
  double cap_c = 0.0;  // T_t,2 Pi_2 sigma_n^2
  double cap_d = 0.0;  // Gamma_1 |H1|^2 + sigma_e^2 (Gamma_1 + Gamma_2)
  double cap_g = 0.0;  // sum mu Q + sum beta P^H - psi sum (T_t+T_h)/kappa - lambda
  Pair q_k{};
  Pair p_h_k{};
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double p = 0.0, q = 0.0, r = 0.0;
  bool degenerate = false;  // G == 0 or B*D == 0
};

/// Closed interval of CE powers satisfying C1, C2, C3 and C5 (exact-rate
/// form) for fixed reflection coefficients.
struct PowerInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string binding;  // constraint that sets `lower`, empty if none
};

/// Inputs needed to score a candidate power: R_bar(P) - psi * P_T(P).
struct PowerObjective {
  const ScenarioChannel* channel = nullptr;
  Pair gammas{};
  ApproxCoeffs coeffs;
  double psi = 0.0;
  PowerInterval interval;

  double operator()(double p_ce_w, const SystemParams& params) const;
};

struct IterationRecord {
  double psi = 0.0;
  double p_ce_w = 0.0;
  double residual = 0.0;  // |R_bar(P_new) - psi P_T(P_new)|
};

struct StageOneResult {
  double p_ce_w = 0.0;
  double psi = 0.0;  // energy efficiency at p_ce_w
  std::vector<IterationRecord> trace;
  bool converged = false;
  int iterations = 0;
  ApproxCoeffs coeffs;  // bound anchored at the returned point
  DualState duals;
  PowerInterval interval;
};

struct OcetpInit {
  std::optional<DualState> duals;
  std::optional<double> psi;
  std::optional<double> p_ce_w;
};

/// Throws InfeasibleProblem naming the violated constraint when the interval
/// is empty.
PowerInterval feasible_power_interval(const ScenarioChannel& channel, Pair gammas,
                                      const SystemParams& params);

CardanoCoeffs cardano_coefficients(const ScenarioChannel& channel, Pair gammas,
                                   const ApproxCoeffs& coeffs, const DualState& duals,
                                   double psi, const SystemParams& params);

/// Real roots of the record's cubic; empty when the record is degenerate in
/// a way that leaves no polynomial (all coefficients zero).
std::vector<double> solve_cubic(const CardanoCoeffs& coeffs);

/// Clamps positive roots into the objective's interval, adds the interval
/// end points, and returns the candidate with the largest objective.
double select_power_candidate(const std::vector<double>& roots, const PowerObjective& objective,
                              const SystemParams& params);

/// One projected subgradient step; step sizes decay as w0 / sqrt(iter).
DualState update_duals(const DualState& duals, double p_ce_w, Pair gammas,
                       const ScenarioChannel& channel, const ApproxCoeffs& coeffs,
                       const SystemParams& params);

/// Stage 1: Dinkelbach iterations with dual updates and the Cardano root.
StageOneResult run_ocetp(const ScenarioChannel& channel, Pair gammas, const SystemParams& params,
                         const OcetpInit& init = {});

}  // namespace bsnoma
