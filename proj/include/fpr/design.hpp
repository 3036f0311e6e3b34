// ============================================================================
// design.hpp -- operating-point inversion and comparison against Nair's bound.
//
// Advantage is 10*log10(N_T / N_bar) at equal error probability, with N_T from
// the exact Nair bound and N_bar from the exact coherent-state FPR formulas.
// ============================================================================
#pragma once

#include <cstdint>
#include <vector>

#include "fpr/analytic.hpp"

namespace fpr {

struct AdvantageReport {
  Scenario scenario;          // coherent-state operating point with n_s solved
  double pr_e_target = 0.0;
  double n_s_solved = 0.0;
  double mean_pulses = 0.0;
  double mean_photons_fpr = 0.0;
  double nair_photons = 0.0;
  double advantage_db = 0.0;
};

struct SaturationPoint {
  std::int64_t m_max = 1;
  double advantage_db = 0.0;
};

/// Log-spaced grid over kappa and number-state error probability, with both
/// end points included.
struct ConfluenceGrid {
  double kappa_min = 1e-6;
  double kappa_max = 1e-3;
  double kappa_points_per_decade = 20;
  double pr_e_min = 1e-9;
  double pr_e_max = 1e-1;
  double pr_e_points_per_decade = 20;
};

struct ConfluencePoint {
  double kappa = 0.0;
  double pr_e_number = 0.0;
  double total_photons = 0.0;   // M * N_S giving pr_e_number for Fock pulses
  double pr_e_coherent = 0.0;
  double ratio = 0.0;           // pr_e_coherent / pr_e_number
};

struct ConfluenceReport {
  std::vector<ConfluencePoint> points;   // kappa-major, grid-index order
  double max_ratio = 0.0;
};

/// Smallest N_S meeting pr_e_target. Number-state results are rounded up to
/// an integer, so their pr_e may land below the target.
double solve_signal_photons(Source source, double kappa, std::int64_t m_max,
                            double pr_e_target);

/// Exact inverse of nair_bound(kappa, ., Exact).
double nair_required_photons(double kappa, double pr_e_target);

AdvantageReport advantage_report(double kappa, std::int64_t m_max,
                                 double pr_e_target);

std::vector<SaturationPoint> saturation_curve(double kappa, double pr_e_target,
                                              const std::vector<std::int64_t>& m_list);

/// Pr_CS(e) / Pr_NS(e) at equal total photons M*N_S.
double confluence_ratio(double kappa, double total_photons);

ConfluenceReport confluence_check(const ConfluenceGrid& grid);

/// Inclusive log-spaced samples of [lo, hi] at `per_decade` points per decade.
std::vector<double> log_grid(double lo, double hi, double per_decade);

}  // namespace fpr
