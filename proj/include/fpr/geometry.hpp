// ============================================================================
// geometry.hpp -- resolution, dwell-time motion and false-alarm budget for a
// standoff FPR looking for a target inside an angle-range-Doppler window.
//
// All quantities are SI. The speed of light is the exact SI value and
// g = 9.8 m/s^2.
// ============================================================================
#pragma once

#include <cstdint>
#include <optional>

namespace fpr {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kStandardGravity = 9.8;

struct Geometry {
  double wavelength_m = 1.55e-6;
  double aperture_m = 0.05;
  double range_m = 10e3;
  double range_uncertainty_m = 0.0;       // half-width of [R_min, R_max]
  double pulse_duration_s = 1e-7;
  std::int64_t pulses = 10;               // M
  double v_transverse_mps = 0.0;
  double v_longitudinal_mps = 0.0;
  double accel_longitudinal_mps2 = 0.0;
  double doppler_uncertainty_hz = 0.0;    // half-width
  std::optional<double> repetition_s;     // defaults to 2R/c

  void validate() const;
};

struct Resolutions {
  double theta_res_rad = 0.0;
  double range_res_m = 0.0;
  double doppler_res_hz = 0.0;
  double t_rep_s = 0.0;
  double t_dwell_s = 0.0;
  /// t_rep >= 2 R_max / c, i.e. every range gate in the uncertainty window
  /// returns before the next pulse leaves.
  bool covers_range_window = false;
};

struct DwellChanges {
  double delta_theta_rad = 0.0;
  double delta_range_m = 0.0;
  double delta_doppler_hz = 0.0;
  double doppler_shift_hz = 0.0;
};

struct BinBudget {
  std::int64_t b_range = 1;
  std::int64_t b_doppler = 1;
  std::int64_t b_total = 1;
};

struct FalseAlarmBudget {
  double p_f_background = 0.0;
  double p_f_dark = 0.0;
  double p_f_total = 0.0;
  double log_p_f_background = 0.0;
  double log_p_f_dark = 0.0;
  double log_p_f_total = 0.0;
};

/// Throws DomainError when the repetition period is shorter than 2R/c.
Resolutions resolutions(const Geometry& geometry);

DwellChanges dwell_changes(const Geometry& geometry);

BinBudget uncertainty_bins(const Geometry& geometry);

FalseAlarmBudget impairment_false_alarm(const BinBudget& bins,
                                        const Geometry& geometry, double n_b,
                                        double dcr);

/// True when impairment false alarms are no more likely than pure-loss misses,
/// which caps the error-probability penalty at a factor of two.
bool impairment_budget_ok(double p_f_total, double p_m_pure_loss);

}  // namespace fpr
