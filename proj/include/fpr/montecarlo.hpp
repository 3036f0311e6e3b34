// ============================================================================
// montecarlo.hpp -- click-level simulation of the sequential FPR protocol.
//
// Only vacuum-or-not is sampled for each pulse; the decision rule never looks
// at the photon count. Background (B bins at N_B photons per mode) and dark
// counts (DCR over B_r range gates of duration T) are pooled into one Poisson
// mean per pulse.
// ============================================================================
#pragma once

#include <cstdint>

#include "fpr/analytic.hpp"
#include "fpr/rng.hpp"

namespace fpr {

struct Impairments {
  double eta = 1.0;                  // detector quantum efficiency
  double n_b = 0.0;                  // background photons per mode
  double dcr = 0.0;                  // dark counts per second
  std::int64_t bins_total = 1;       // B
  std::int64_t bins_range = 1;       // B_r
  double pulse_duration_s = 1e-7;    // T

  static Impairments pure_loss() { return {}; }

  void validate() const;

  /// Mean noise clicks per pulse: B*eta*N_B + DCR*B_r*T.
  [[nodiscard]] double noise_mean() const noexcept;
};

struct TrialOutcome {
  Hypothesis decision = Hypothesis::H0;
  std::int64_t pulses_used = 0;
  double photons_transmitted = 0.0;
};

struct EstimatedMetrics {
  double p_f_hat = 0.0;
  double p_m_hat = 0.0;
  double pr_e_hat = 0.0;
  double mean_pulses_hat = 0.0;     // (H0 mean + H1 mean) / 2
  double mean_pulses_h0_hat = 0.0;
  double mean_pulses_h1_hat = 0.0;

  double p_f_stderr = 0.0;
  double p_m_stderr = 0.0;
  double pr_e_stderr = 0.0;
  double mean_pulses_stderr = 0.0;
  double mean_pulses_h0_stderr = 0.0;
  double mean_pulses_h1_stderr = 0.0;

  std::uint64_t trials_per_hypothesis = 0;
  std::uint64_t master_seed = 0;

  bool operator==(const EstimatedMetrics&) const = default;
};

/// Analytic counterpart of the simulation, valid with impairments: the
/// truncated-geometric formulas with per-pulse click probabilities under each
/// hypothesis. Reduces to fpr_metrics() under pure loss.
struct PredictedMetrics {
  double p_f = 0.0;
  double p_m = 0.0;
  double pr_e = 0.0;
  double log_p_f = 0.0;
  double log_p_m = 0.0;
  double mean_pulses = 0.0;
  double mean_pulses_h0 = 0.0;
  double mean_pulses_h1 = 0.0;
};

/// ln(1 - p_click) for one pulse.
double log_no_click_probability(const Scenario& scenario,
                                const Impairments& impairments,
                                Hypothesis hypothesis);

double per_pulse_click_probability(const Scenario& scenario,
                                   const Impairments& impairments,
                                   Hypothesis hypothesis);

PredictedMetrics predicted_metrics(const Scenario& scenario,
                                   const Impairments& impairments);

/// One sequential trial: at most M Bernoulli(p_click) draws in pulse order,
/// stopping at the first click.
TrialOutcome run_trial(double p_click, std::int64_t m_max, double n_s,
                       TrialRng& rng);

TrialOutcome run_trial(const Scenario& scenario, const Impairments& impairments,
                       Hypothesis hypothesis, TrialRng& rng);

/// Runs `trials` trials per hypothesis. The result depends only on the
/// arguments other than `workers` (0 = hardware concurrency).
EstimatedMetrics estimate_metrics(const Scenario& scenario,
                                  const Impairments& impairments,
                                  std::uint64_t trials,
                                  std::uint64_t master_seed,
                                  unsigned workers = 0);

}  // namespace fpr
