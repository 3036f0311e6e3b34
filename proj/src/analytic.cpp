#include "fpr/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fpr/errors.hpp"

namespace fpr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

void validate_common(double kappa, double n_s, std::int64_t m_max) {
  detail::require(std::isfinite(kappa) && kappa > 0.0 && kappa <= 1.0,
                  "kappa must lie in (0, 1], got " + std::to_string(kappa));
  detail::require(std::isfinite(n_s) && n_s > 0.0,
                  "n_s must be positive and finite, got " + std::to_string(n_s));
  detail::require(m_max >= 1,
                  "m_max must be at least 1, got " + std::to_string(m_max));
}

void validate_bound_args(double kappa, double n_t) {
  detail::require(std::isfinite(kappa) && kappa > 0.0 && kappa <= 1.0,
                  "kappa must lie in (0, 1], got " + std::to_string(kappa));
  detail::require(std::isfinite(n_t) && n_t > 0.0,
                  "n_t must be positive and finite, got " + std::to_string(n_t));
}

// (1 - sqrt(1 - y)) / 2 with y = exp(log_y), rewritten as y / (2 (1 + sqrt(1 - y)))
// so small y does not cancel.
BoundValue half_one_minus_sqrt(double log_y) {
  const double y = std::exp(log_y);
  const double denom = 1.0 + std::sqrt(-std::expm1(log_y));
  BoundValue b;
  b.value = y / (2.0 * denom);
  b.log_value = log_y - kLn2 - std::log(denom);
  return b;
}

Metrics metrics_from_log_q(double log_q, double n_s, std::int64_t m_max) {
  Metrics out;
  const double m = static_cast<double>(m_max);
  out.p_f = 0.0;
  out.log_p_m = m * log_q;
  out.p_m = std::exp(out.log_p_m);
  out.pr_e = 0.5 * (out.p_f + out.p_m);
  out.stop_pmf = truncated_geometric_pmf(log_q, m_max);
  out.mean_pulses = 0.5 * m + 0.5 * truncated_geometric_sum(log_q, m_max);
  out.mean_photons = out.mean_pulses * n_s;
  return out;
}

}  // namespace

const char* to_string(Source source) noexcept {
  return source == Source::NumberState ? "number" : "coherent";
}

const char* to_string(Hypothesis hypothesis) noexcept {
  return hypothesis == Hypothesis::H0 ? "H0" : "H1";
}

void Scenario::validate() const {
  validate_common(kappa, n_s, m_max);
  if (source == Source::NumberState) {
    detail::require(n_s == std::floor(n_s),
                    "number-state n_s must be an integer, got " +
                        std::to_string(n_s));
  }
}

double Metrics::log_pr_e() const noexcept {
  if (p_f == 0.0) return log_p_m - kLn2;
  return std::log(pr_e);
}

double log_no_click(Source source, double kappa, double n_s) {
  if (source == Source::NumberState) return n_s * std::log1p(-kappa);
  return -kappa * n_s;
}

std::vector<double> truncated_geometric_pmf(double log_q, std::int64_t m_max) {
  detail::require(m_max >= 1, "m_max must be at least 1");
  detail::require(log_q <= 0.0, "no-click probability must not exceed 1");
  std::vector<double> pmf(static_cast<std::size_t>(m_max));
  const double p_click = -std::expm1(log_q);
  for (std::int64_t m = 1; m < m_max; ++m) {
    // q^(m-1) with q = 0 and m = 1 is 1, which exp(0 * -inf) would lose.
    const double survive = m == 1 ? 1.0 : std::exp(static_cast<double>(m - 1) * log_q);
    pmf[static_cast<std::size_t>(m - 1)] = p_click * survive;
  }
  pmf.back() = m_max == 1 ? 1.0 : std::exp(static_cast<double>(m_max - 1) * log_q);
  return pmf;
}

double truncated_geometric_sum(double log_q, std::int64_t m_max) {
  detail::require(m_max >= 1, "m_max must be at least 1");
  const double m = static_cast<double>(m_max);
  if (log_q == 0.0) return m;  // q = 1: every term is 1
  if (log_q == -kInf) return 1.0;
  return std::expm1(m * log_q) / std::expm1(log_q);
}

Metrics ns_fpr_metrics(double kappa, double n_s, std::int64_t m_max) {
  Scenario{Source::NumberState, kappa, n_s, m_max}.validate();
  return metrics_from_log_q(log_no_click(Source::NumberState, kappa, n_s), n_s,
                            m_max);
}

Metrics cs_fpr_metrics(double kappa, double n_s, std::int64_t m_max) {
  Scenario{Source::CoherentState, kappa, n_s, m_max}.validate();
  return metrics_from_log_q(log_no_click(Source::CoherentState, kappa, n_s), n_s,
                            m_max);
}

Metrics fpr_metrics(const Scenario& scenario) {
  return scenario.source == Source::NumberState
             ? ns_fpr_metrics(scenario.kappa, scenario.n_s, scenario.m_max)
             : cs_fpr_metrics(scenario.kappa, scenario.n_s, scenario.m_max);
}

std::vector<double> stop_pmf(const Scenario& scenario) {
  scenario.validate();
  return truncated_geometric_pmf(
      log_no_click(scenario.source, scenario.kappa, scenario.n_s),
      scenario.m_max);
}

BoundValue nair_bound(double kappa, double n_t, Regime regime) {
  validate_bound_args(kappa, n_t);
  if (regime == Regime::Asymptotic) {
    BoundValue b;
    b.regime = Regime::Asymptotic;
    b.log_value = -kappa * n_t - 2.0 * kLn2;
    b.value = std::exp(b.log_value);
    return b;
  }
  BoundValue b = half_one_minus_sqrt(n_t * std::log1p(-kappa));
  b.regime = Regime::Exact;
  return b;
}

BoundValue cs_chernoff_bound(double kappa, double n_t, double n_b) {
  validate_bound_args(kappa, n_t);
  detail::require(std::isfinite(n_b) && n_b >= 0.0,
                  "n_b must be nonnegative, got " + std::to_string(n_b));
  // sqrt(n_b + 1) - sqrt(n_b) = 1 / (sqrt(n_b + 1) + sqrt(n_b))
  const double gap = 1.0 / (std::sqrt(n_b + 1.0) + std::sqrt(n_b));
  BoundValue b;
  b.log_value = -kappa * n_t * gap * gap - kLn2;
  b.value = std::exp(b.log_value);
  return b;
}

BoundValue cs_helstrom_pure_loss(double kappa, double n_t) {
  validate_bound_args(kappa, n_t);
  return half_one_minus_sqrt(-kappa * n_t);
}

LrtResult singular_lrt(std::int64_t n_detected, double kappa, double n_s) {
  detail::require(n_detected >= 0, "n_detected must be nonnegative");
  detail::require(std::isfinite(kappa) && kappa > 0.0 && kappa < 1.0,
                  "kappa must lie in (0, 1) for the likelihood ratio");
  detail::require(std::isfinite(n_s) && n_s > 0.0, "n_s must be positive");
  LrtResult r;
  if (n_detected == 0) {
    r.log_ratio = -kappa * n_s;
    r.ratio = std::exp(r.log_ratio);
  } else {
    r.log_ratio = kInf;
    r.ratio = kInf;
  }
  // The ratio is finite (< 1) exactly when nothing was detected. Deciding on
  // the count rather than on the ratio avoids exp(-kappa n_s) rounding to 1,
  // or kappa * n_s underflowing to -0, for vanishing signals.
  r.decision = n_detected > 0 ? Hypothesis::H1 : Hypothesis::H0;
  return r;
}

}  // namespace fpr
