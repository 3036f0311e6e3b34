#include "fpr/geometry.hpp"

#include <cmath>
#include <string>

#include "fpr/errors.hpp"

namespace fpr {
namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

// ceil() that ignores the last few ulps: 1e9 / (1 / 1e-7) lands a hair above 100.
std::int64_t bin_count(double width, double resolution) {
  const double bins = width / resolution;
  const auto n = static_cast<std::int64_t>(std::ceil(bins * (1.0 - 1e-12)));
  return n < 1 ? 1 : n;
}

double log_one_minus_exp_neg(double mean) {
  return std::log(-std::expm1(-mean));
}

}  // namespace

void Geometry::validate() const {
  detail::require(positive(wavelength_m), "wavelength must be positive");
  detail::require(positive(aperture_m), "aperture must be positive");
  detail::require(positive(range_m), "range must be positive");
  detail::require(nonnegative(range_uncertainty_m),
                  "range uncertainty must be nonnegative");
  detail::require(range_uncertainty_m < range_m,
                  "range uncertainty must be smaller than the range");
  detail::require(positive(pulse_duration_s), "pulse duration must be positive");
  detail::require(pulses >= 1, "pulse count must be at least 1");
  detail::require(nonnegative(v_transverse_mps), "transverse speed must be nonnegative");
  detail::require(nonnegative(v_longitudinal_mps),
                  "longitudinal speed must be nonnegative");
  detail::require(nonnegative(accel_longitudinal_mps2),
                  "longitudinal acceleration must be nonnegative");
  detail::require(nonnegative(doppler_uncertainty_hz),
                  "Doppler uncertainty must be nonnegative");
  if (repetition_s) {
    detail::require(positive(*repetition_s), "repetition period must be positive");
  }
}

Resolutions resolutions(const Geometry& g) {
  g.validate();
  const double roundtrip = 2.0 * g.range_m / kSpeedOfLight;
  Resolutions r;
  r.theta_res_rad = 1.22 * g.wavelength_m / g.aperture_m;
  r.range_res_m = kSpeedOfLight * g.pulse_duration_s / 2.0;
  r.doppler_res_hz = 1.0 / g.pulse_duration_s;
  r.t_rep_s = g.repetition_s.value_or(roundtrip);
  if (r.t_rep_s < roundtrip) {
    throw DomainError("repetition period " + std::to_string(r.t_rep_s) +
                      " s is shorter than the 2R/c roundtrip " +
                      std::to_string(roundtrip) + " s");
  }
  r.t_dwell_s = static_cast<double>(g.pulses) * r.t_rep_s;
  const double r_max = g.range_m + g.range_uncertainty_m;
  r.covers_range_window = r.t_rep_s >= 2.0 * r_max / kSpeedOfLight;
  return r;
}

DwellChanges dwell_changes(const Geometry& g) {
  const double t_dwell = resolutions(g).t_dwell_s;
  DwellChanges d;
  d.delta_theta_rad = g.v_transverse_mps * t_dwell / g.range_m;
  d.delta_range_m = g.v_longitudinal_mps * t_dwell;
  d.delta_doppler_hz = 2.0 * g.accel_longitudinal_mps2 * t_dwell / g.wavelength_m;
  d.doppler_shift_hz = 2.0 * g.v_longitudinal_mps / g.wavelength_m;
  return d;
}

BinBudget uncertainty_bins(const Geometry& g) {
  const Resolutions r = resolutions(g);
  BinBudget b;
  b.b_range = bin_count(2.0 * g.range_uncertainty_m, r.range_res_m);
  b.b_doppler = bin_count(2.0 * g.doppler_uncertainty_hz, r.doppler_res_hz);
  b.b_total = b.b_range * b.b_doppler;
  return b;
}

FalseAlarmBudget impairment_false_alarm(const BinBudget& bins, const Geometry& g,
                                        double n_b, double dcr) {
  detail::require(nonnegative(n_b), "n_b must be nonnegative");
  detail::require(nonnegative(dcr), "dcr must be nonnegative");
  detail::require(bins.b_range >= 1 && bins.b_doppler >= 1 &&
                      bins.b_total == bins.b_range * bins.b_doppler,
                  "bin budget must satisfy B = B_r * B_d >= 1");
  g.validate();
  const double m = static_cast<double>(g.pulses);
  const double background = static_cast<double>(bins.b_total) * m * n_b;
  const double dark = dcr * m * static_cast<double>(bins.b_range) * g.pulse_duration_s;
  FalseAlarmBudget f;
  f.p_f_background = -std::expm1(-background);
  f.p_f_dark = -std::expm1(-dark);
  f.p_f_total = -std::expm1(-(background + dark));
  f.log_p_f_background = log_one_minus_exp_neg(background);
  f.log_p_f_dark = log_one_minus_exp_neg(dark);
  f.log_p_f_total = log_one_minus_exp_neg(background + dark);
  return f;
}

bool impairment_budget_ok(double p_f_total, double p_m_pure_loss) {
  detail::require(p_f_total >= 0.0 && p_f_total <= 1.0, "p_f_total must be a probability");
  detail::require(p_m_pure_loss >= 0.0 && p_m_pure_loss <= 1.0,
                  "p_m must be a probability");
  return p_f_total <= p_m_pure_loss;
}

}  // namespace fpr
