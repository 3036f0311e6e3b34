#include "fpr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "fpr/errors.hpp"

namespace fpr {
namespace {

struct Tally {
  std::uint64_t clicked = 0;       // trials ending in decision H1
  std::uint64_t pulses = 0;
  std::uint64_t pulses_sq = 0;

  void merge(const Tally& other) noexcept {
    clicked += other.clicked;
    pulses += other.pulses;
    pulses_sq += other.pulses_sq;
  }
};

Tally run_range(double p_click, std::int64_t m_max, double n_s,
                std::uint64_t master_seed, unsigned hypothesis_bit,
                std::uint64_t begin, std::uint64_t end) {
  Tally t;
  for (std::uint64_t i = begin; i < end; ++i) {
    auto rng = TrialRng::for_trial(master_seed, hypothesis_bit, i);
    const TrialOutcome out = run_trial(p_click, m_max, n_s, rng);
    const auto used = static_cast<std::uint64_t>(out.pulses_used);
    if (out.decision == Hypothesis::H1) ++t.clicked;
    t.pulses += used;
    t.pulses_sq += used * used;
  }
  return t;
}

Tally run_hypothesis(double p_click, std::int64_t m_max, double n_s,
                     std::uint64_t trials, std::uint64_t master_seed,
                     unsigned hypothesis_bit, unsigned workers) {
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1U, workers), trials));
  if (workers == 1) {
    return run_range(p_click, m_max, n_s, master_seed, hypothesis_bit, 0, trials);
  }
  std::vector<Tally> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = trials / workers;
  const std::uint64_t extra = trials % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, end] {
      partial[w] = run_range(p_click, m_max, n_s, master_seed, hypothesis_bit,
                             begin, end);
    });
    begin = end;
  }
  for (auto& th : pool) th.join();
  Tally total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

double binomial_stderr(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

// Standard error of the sample mean from integer sums.
double mean_stderr(const Tally& t, double n) {
  const double mean = static_cast<double>(t.pulses) / n;
  const double var = std::max(0.0, static_cast<double>(t.pulses_sq) / n - mean * mean);
  return n > 1.0 ? std::sqrt(var / (n - 1.0)) : 0.0;
}

}  // namespace

void Impairments::validate() const {
  detail::require(std::isfinite(eta) && eta > 0.0 && eta <= 1.0,
                  "eta must lie in (0, 1], got " + std::to_string(eta));
  detail::require(std::isfinite(n_b) && n_b >= 0.0, "n_b must be nonnegative");
  detail::require(std::isfinite(dcr) && dcr >= 0.0, "dcr must be nonnegative");
  detail::require(bins_range >= 1, "bins_range must be at least 1");
  detail::require(bins_total >= bins_range,
                  "bins_total must be at least bins_range");
  detail::require(std::isfinite(pulse_duration_s) && pulse_duration_s > 0.0,
                  "pulse duration must be positive");
}

double Impairments::noise_mean() const noexcept {
  return static_cast<double>(bins_total) * eta * n_b +
         dcr * static_cast<double>(bins_range) * pulse_duration_s;
}

double log_no_click_probability(const Scenario& scenario,
                                const Impairments& impairments,
                                Hypothesis hypothesis) {
  scenario.validate();
  impairments.validate();
  const double noise = impairments.noise_mean();
  if (hypothesis == Hypothesis::H0) return -noise;
  const double kappa_eff = impairments.eta * scenario.kappa;
  return log_no_click(scenario.source, kappa_eff, scenario.n_s) - noise;
}

double per_pulse_click_probability(const Scenario& scenario,
                                   const Impairments& impairments,
                                   Hypothesis hypothesis) {
  return -std::expm1(log_no_click_probability(scenario, impairments, hypothesis));
}

PredictedMetrics predicted_metrics(const Scenario& scenario,
                                   const Impairments& impairments) {
  const double log_q0 = log_no_click_probability(scenario, impairments, Hypothesis::H0);
  const double log_q1 = log_no_click_probability(scenario, impairments, Hypothesis::H1);
  const double m = static_cast<double>(scenario.m_max);
  PredictedMetrics out;
  out.log_p_m = m * log_q1;
  out.p_m = std::exp(out.log_p_m);
  out.p_f = -std::expm1(m * log_q0);
  out.log_p_f = std::log(out.p_f);
  out.pr_e = 0.5 * (out.p_f + out.p_m);
  out.mean_pulses_h0 = truncated_geometric_sum(log_q0, scenario.m_max);
  out.mean_pulses_h1 = truncated_geometric_sum(log_q1, scenario.m_max);
  out.mean_pulses = 0.5 * (out.mean_pulses_h0 + out.mean_pulses_h1);
  return out;
}

TrialOutcome run_trial(double p_click, std::int64_t m_max, double n_s,
                       TrialRng& rng) {
  TrialOutcome out;
  for (std::int64_t pulse = 1; pulse <= m_max; ++pulse) {
    if (rng.next_unit() < p_click) {
      out.decision = Hypothesis::H1;
      out.pulses_used = pulse;
      out.photons_transmitted = static_cast<double>(pulse) * n_s;
      return out;
    }
  }
  out.decision = Hypothesis::H0;
  out.pulses_used = m_max;
  out.photons_transmitted = static_cast<double>(m_max) * n_s;
  return out;
}

TrialOutcome run_trial(const Scenario& scenario, const Impairments& impairments,
                       Hypothesis hypothesis, TrialRng& rng) {
  const double p = per_pulse_click_probability(scenario, impairments, hypothesis);
  return run_trial(p, scenario.m_max, scenario.n_s, rng);
}

EstimatedMetrics estimate_metrics(const Scenario& scenario,
                                  const Impairments& impairments,
                                  std::uint64_t trials,
                                  std::uint64_t master_seed, unsigned workers) {
  detail::require(trials >= 1, "trials must be at least 1");
  const double p0 = per_pulse_click_probability(scenario, impairments, Hypothesis::H0);
  const double p1 = per_pulse_click_probability(scenario, impairments, Hypothesis::H1);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());

  const Tally h0 = run_hypothesis(p0, scenario.m_max, scenario.n_s, trials,
                                  master_seed, 0, workers);
  const Tally h1 = run_hypothesis(p1, scenario.m_max, scenario.n_s, trials,
                                  master_seed, 1, workers);

  const double n = static_cast<double>(trials);
  EstimatedMetrics est;
  est.trials_per_hypothesis = trials;
  est.master_seed = master_seed;
  est.p_f_hat = static_cast<double>(h0.clicked) / n;
  est.p_m_hat = static_cast<double>(trials - h1.clicked) / n;
  est.pr_e_hat = 0.5 * (est.p_f_hat + est.p_m_hat);
  est.mean_pulses_h0_hat = static_cast<double>(h0.pulses) / n;
  est.mean_pulses_h1_hat = static_cast<double>(h1.pulses) / n;
  est.mean_pulses_hat = 0.5 * (est.mean_pulses_h0_hat + est.mean_pulses_h1_hat);

  est.p_f_stderr = binomial_stderr(est.p_f_hat, n);
  est.p_m_stderr = binomial_stderr(est.p_m_hat, n);
  est.pr_e_stderr = 0.5 * std::hypot(est.p_f_stderr, est.p_m_stderr);
  est.mean_pulses_h0_stderr = mean_stderr(h0, n);
  est.mean_pulses_h1_stderr = mean_stderr(h1, n);
  est.mean_pulses_stderr =
      0.5 * std::hypot(est.mean_pulses_h0_stderr, est.mean_pulses_h1_stderr);
  return est;
}

}  // namespace fpr
