#include "fpr/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpr/errors.hpp"

namespace fpr {
namespace {

void validate_target(double pr_e_target) {
  detail::require(std::isfinite(pr_e_target) && pr_e_target > 0.0,
                  "pr_e_target must be positive, got " + std::to_string(pr_e_target));
  if (pr_e_target >= 0.5) {
    throw UnreachableTarget("pr_e_target " + std::to_string(pr_e_target) +
                            " is not below 1/2; no transmission is needed or possible");
  }
}

void validate_design_kappa(double kappa) {
  detail::require(std::isfinite(kappa) && kappa > 0.0 && kappa < 1.0,
                  "kappa must lie in (0, 1) for design, got " + std::to_string(kappa));
}

}  // namespace

double solve_signal_photons(Source source, double kappa, std::int64_t m_max,
                            double pr_e_target) {
  validate_design_kappa(kappa);
  validate_target(pr_e_target);
  detail::require(m_max >= 1, "m_max must be at least 1");
  const double m = static_cast<double>(m_max);
  if (source == Source::CoherentState) {
    return -std::log(2.0 * pr_e_target) / (kappa * m);
  }
  const double exact = std::log(2.0 * pr_e_target) / (m * std::log1p(-kappa));
  // floor(exact) may already meet the target when exact is an integer that
  // picked up a rounding error on the way.
  double n_s = std::max(1.0, std::floor(exact));
  if (ns_fpr_metrics(kappa, n_s, m_max).pr_e > pr_e_target * (1.0 + 1e-12)) {
    n_s += 1.0;
  }
  return n_s;
}

double nair_required_photons(double kappa, double pr_e_target) {
  validate_design_kappa(kappa);
  validate_target(pr_e_target);
  // 1 - (1 - 2p)^2 = 4p(1 - p)
  return std::log(4.0 * pr_e_target * (1.0 - pr_e_target)) / std::log1p(-kappa);
}

AdvantageReport advantage_report(double kappa, std::int64_t m_max,
                                 double pr_e_target) {
  AdvantageReport r;
  r.pr_e_target = pr_e_target;
  r.n_s_solved = solve_signal_photons(Source::CoherentState, kappa, m_max, pr_e_target);
  r.scenario = Scenario{Source::CoherentState, kappa, r.n_s_solved, m_max};
  const Metrics metrics = cs_fpr_metrics(kappa, r.n_s_solved, m_max);
  r.mean_pulses = metrics.mean_pulses;
  r.mean_photons_fpr = metrics.mean_photons;
  r.nair_photons = nair_required_photons(kappa, pr_e_target);
  r.advantage_db = 10.0 * std::log10(r.nair_photons / r.mean_photons_fpr);
  return r;
}

std::vector<SaturationPoint> saturation_curve(double kappa, double pr_e_target,
                                              const std::vector<std::int64_t>& m_list) {
  std::vector<SaturationPoint> curve;
  curve.reserve(m_list.size());
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    detail::require(i == 0 || m_list[i] > m_list[i - 1],
                    "saturation M list must be strictly increasing");
    curve.push_back({m_list[i], advantage_report(kappa, m_list[i], pr_e_target).advantage_db});
  }
  return curve;
}

double confluence_ratio(double kappa, double total_photons) {
  validate_design_kappa(kappa);
  detail::require(std::isfinite(total_photons) && total_photons > 0.0,
                  "total photons must be positive");
  // exp(-kappa x) / (1 - kappa)^x; the exponent is x * (kappa^2/2 + ...) >= 0
  return std::exp(total_photons * (-kappa - std::log1p(-kappa)));
}

std::vector<double> log_grid(double lo, double hi, double per_decade) {
  detail::require(lo > 0.0 && hi >= lo, "log grid needs 0 < lo <= hi");
  detail::require(per_decade > 0.0, "points per decade must be positive");
  const double decades = std::log10(hi / lo);
  const auto intervals = static_cast<std::int64_t>(std::llround(decades * per_decade));
  if (intervals == 0) return {lo};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(intervals) + 1);
  for (std::int64_t i = 0; i < intervals; ++i) {
    out.push_back(lo * std::pow(10.0, decades * static_cast<double>(i) /
                                          static_cast<double>(intervals)));
  }
  out.push_back(hi);
  return out;
}

ConfluenceReport confluence_check(const ConfluenceGrid& grid) {
  detail::require(grid.kappa_max <= 1e-3,
                  "confluence claim covers kappa <= 1e-3 only");
  detail::require(grid.pr_e_min >= 1e-9 && grid.pr_e_max <= 1e-1,
                  "confluence claim covers 1e-9 <= Pr(e) <= 1e-1 only");
  ConfluenceReport report;
  for (const double kappa : log_grid(grid.kappa_min, grid.kappa_max,
                                     grid.kappa_points_per_decade)) {
    for (const double pr_ns : log_grid(grid.pr_e_min, grid.pr_e_max,
                                       grid.pr_e_points_per_decade)) {
      ConfluencePoint p;
      p.kappa = kappa;
      p.pr_e_number = pr_ns;
      p.total_photons = std::log(2.0 * pr_ns) / std::log1p(-kappa);
      p.ratio = confluence_ratio(kappa, p.total_photons);
      p.pr_e_coherent = pr_ns * p.ratio;
      report.max_ratio = std::max(report.max_ratio, p.ratio);
      report.points.push_back(p);
    }
  }
  return report;
}

}  // namespace fpr
