// ============================================================================
// analytic.hpp -- closed-form first-photon radar performance and reference
// error-probability bounds over the pure-loss channel.
//
// An FPR transmits up to M pulses of N_S photons each and stops at the first
// detected photon, declaring the target present. Under pure loss there are no
// clicks without a target, so P_F = 0 and the only error is a miss after M
// silent pulses. Everything that can underflow is also reported as a natural
// logarithm so exponents such as -1e7 survive intact.
// ============================================================================
#pragma once

#include <cstdint>
#include <vector>

namespace fpr {

enum class Source { NumberState, CoherentState };
enum class Hypothesis { H0, H1 };
enum class Regime { Exact, Asymptotic };

const char* to_string(Source source) noexcept;
const char* to_string(Hypothesis hypothesis) noexcept;

/// FPR operating point.
struct Scenario {
  Source source = Source::CoherentState;
  double kappa = 0.0;   // roundtrip transmissivity, 0 < kappa <= 1
  double n_s = 0.0;     // photons per pulse (integer for NumberState)
  std::int64_t m_max = 1;

  /// Throws DomainError unless the invariants hold.
  void validate() const;
};

struct Metrics {
  double p_f = 0.0;
  double p_m = 0.0;
  double pr_e = 0.0;
  double log_p_m = 0.0;            // ln P_M, finite even when p_m underflows
  std::vector<double> stop_pmf;    // Pr(m | H1), m = 1..M
  double mean_pulses = 0.0;        // unconditional over equiprobable H0/H1
  double mean_photons = 0.0;

  /// ln Pr(e); equals log_p_m - ln 2 whenever p_f = 0.
  [[nodiscard]] double log_pr_e() const noexcept;
};

struct BoundValue {
  double value = 0.0;
  double log_value = 0.0;
  Regime regime = Regime::Exact;
};

struct LrtResult {
  double ratio = 0.0;       // +infinity for any click
  double log_ratio = 0.0;
  Hypothesis decision = Hypothesis::H0;
};

/// Natural log of the probability that one pulse produces no click under H1
/// with pure loss: N_S*log1p(-kappa) for Fock pulses, -kappa*N_S for coherent.
double log_no_click(Source source, double kappa, double n_s);

/// Truncated geometric stopping pmf with per-pulse no-click probability
/// exp(log_q): (1-q) q^(m-1) for m < M, q^(M-1) for m = M.
std::vector<double> truncated_geometric_pmf(double log_q, std::int64_t m_max);

/// sum_{m=0}^{M-1} q^m = (1 - q^M) / (1 - q), evaluated without cancellation.
double truncated_geometric_sum(double log_q, std::int64_t m_max);

Metrics ns_fpr_metrics(double kappa, double n_s, std::int64_t m_max);
Metrics cs_fpr_metrics(double kappa, double n_s, std::int64_t m_max);
Metrics fpr_metrics(const Scenario& scenario);

std::vector<double> stop_pmf(const Scenario& scenario);

/// Nair's lower bound on Pr(e) for a fixed-duration pure-state radar
/// transmitting n_t photons on average.
BoundValue nair_bound(double kappa, double n_t, Regime regime = Regime::Exact);

/// Coherent-state Chernoff bound with n_b background photons per mode.
BoundValue cs_chernoff_bound(double kappa, double n_t, double n_b);

/// Helstrom limit for coherent state vs vacuum at received mean kappa*n_t.
BoundValue cs_helstrom_pure_loss(double kappa, double n_t);

/// Single-pulse coherent-state likelihood ratio Pr(n|H1)/Pr(n|H0), decided
/// against threshold 1 (ties go to H1).
LrtResult singular_lrt(std::int64_t n_detected, double kappa, double n_s);

}  // namespace fpr
