// Test-only reference computations. Nothing here calls into the library; each
// oracle recomputes a quantity by a different route (enumeration, direct
// summation, naive pow) so the tests compare two independent paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

/// Per-pulse no-click probability by naive pow/exp, in long double.
inline long double no_click_number(long double kappa, long double n_s) {
  return std::pow(1.0L - kappa, n_s);
}
inline long double no_click_coherent(long double kappa, long double n_s) {
  return std::exp(-kappa * n_s);
}

struct Enumerated {
  std::vector<long double> stop_pmf;   // Pr(m | H1)
  long double p_m = 0;                 // no click in any of the M pulses
  long double mean_pulses_h1 = 0;
};

/// Enumerates all 2^M click/no-click patterns, applies the stop-at-first-click
/// rule to each and accumulates pattern probabilities. Only for small M.
inline Enumerated enumerate_patterns(long double q, int m_max) {
  Enumerated out;
  out.stop_pmf.assign(static_cast<std::size_t>(m_max), 0.0L);
  const std::uint32_t patterns = 1U << m_max;
  for (std::uint32_t bits = 0; bits < patterns; ++bits) {
    long double prob = 1.0L;
    int stop = m_max;
    bool clicked = false;
    for (int k = 0; k < m_max; ++k) {
      const bool click = (bits >> k) & 1U;
      prob *= click ? (1.0L - q) : q;
      if (click && !clicked) {
        clicked = true;
        stop = k + 1;
      }
    }
    out.stop_pmf[static_cast<std::size_t>(stop - 1)] += prob;
    if (!clicked) out.p_m += prob;
    out.mean_pulses_h1 += prob * stop;
  }
  return out;
}

/// sum_{m=0}^{M-1} q^m by repeated multiplication.
inline long double geometric_sum_direct(long double q, std::int64_t m_max) {
  long double term = 1.0L;
  long double sum = 0.0L;
  for (std::int64_t m = 0; m < m_max; ++m) {
    sum += term;
    term *= q;
  }
  return sum;
}

/// sum_m m * pmf[m-1]
inline long double pmf_mean(const std::vector<double>& pmf) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < pmf.size(); ++i) s += static_cast<long double>(i + 1) * pmf[i];
  return s;
}

/// Nair bound written exactly as printed, in long double.
inline long double nair_naive(long double kappa, long double n_t) {
  return (1.0L - std::sqrt(1.0L - std::pow(1.0L - kappa, n_t))) / 2.0L;
}

/// The small-N_B approximation of the Chernoff exponent factor.
inline double chernoff_factor_approx(double n_b) { return 1.0 - 2.0 * std::sqrt(n_b); }

}  // namespace oracle
