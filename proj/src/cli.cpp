#include "fpr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fpr/analytic.hpp"
#include "fpr/design.hpp"
#include "fpr/errors.hpp"
#include "fpr/geometry.hpp"

namespace fpr::cli {
namespace {

using report::RowBuilder;
using report::Table;

const double kLn2 = std::log(2.0);

const Scenario& require_scenario(const ConfigDocument& config) {
  if (!config.scenario) throw ConfigError("missing config section \"scenario\"");
  return *config.scenario;
}

std::string hex_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

void add_bounds(RowBuilder& row, const Scenario& s, double n_b) {
  const double n_t = static_cast<double>(s.m_max) * s.n_s;
  const BoundValue nair = nair_bound(s.kappa, n_t, Regime::Exact);
  const BoundValue nair_asym = nair_bound(s.kappa, n_t, Regime::Asymptotic);
  const BoundValue chernoff = cs_chernoff_bound(s.kappa, n_t, n_b);
  const BoundValue helstrom = cs_helstrom_pure_loss(s.kappa, n_t);
  row.add("n_t", n_t)
      .add_probability("nair_exact", nair.value, nair.log_value)
      .add_probability("nair_asymptotic", nair_asym.value, nair_asym.log_value)
      .add("n_b", n_b)
      .add_probability("chernoff", chernoff.value, chernoff.log_value)
      .add_probability("helstrom", helstrom.value, helstrom.log_value);
}

// pr_e travels with ln(2 Pr(e)) so that Pr(e) = exp(pr_e_exponent) / 2.
void add_metrics(RowBuilder& row, const Scenario& s, const Metrics& m) {
  row.add("source", std::string(to_string(s.source)))
      .add("kappa", s.kappa)
      .add("n_s", s.n_s)
      .add("m_max", s.m_max)
      .add_probability("p_f", m.p_f, std::log(m.p_f))
      .add_probability("p_m", m.p_m, m.log_p_m)
      .add("pr_e", m.pr_e)
      .add("pr_e_exponent", m.log_pr_e() + kLn2)
      .add("mean_pulses", m.mean_pulses)
      .add("mean_photons", m.mean_photons);
}

void add_advantage(RowBuilder& row, const AdvantageReport& a) {
  const Metrics achieved = fpr_metrics(a.scenario);
  row.add("kappa", a.scenario.kappa)
      .add("m_max", a.scenario.m_max)
      .add_probability("pr_e_target", a.pr_e_target, std::log(a.pr_e_target))
      .add("n_s", a.n_s_solved)
      .add("mean_pulses", a.mean_pulses)
      .add("mean_photons", a.mean_photons_fpr)
      .add("nair_photons", a.nair_photons)
      .add("advantage_db", a.advantage_db)
      .add_probability("pr_e_achieved", achieved.pr_e, achieved.log_pr_e());
}

// z-score of an estimate against the analytic value. Probabilities use the
// binomial standard error under the analytic value so a zero-count estimate
// of a rare event still scores finitely.
double probability_z(double estimate, double analytic, double variance_sum, double n,
                     double scale) {
  const double se = scale * std::sqrt(variance_sum / n);
  const double diff = estimate - analytic;
  if (se > 0.0) return diff / se;
  return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
}

double mean_z(double estimate, double analytic, double se, double n) {
  const double diff = estimate - analytic;
  if (se > 0.0) return diff / se;
  // All trials identical: differences below one trial's resolution are noise.
  if (std::abs(diff) < 1.0 / n) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

struct SweepPoint {
  std::vector<double> axis_values;
  Scenario scenario;
  DesignSection design;
};

std::vector<SweepPoint> expand_sweep(const ConfigDocument& config) {
  const SweepSection& sweep = *config.sweep;
  const bool analytic = sweep.mode == SweepMode::Analytic;
  if (analytic && !config.scenario) {
    throw ConfigError("analytic sweeps need a \"scenario\" section for the fixed parameters");
  }
  if (!analytic && !config.design) {
    throw ConfigError("design sweeps need a \"design\" section for the fixed parameters");
  }
  bool has_n_s = false;
  bool has_kappa_n_s = false;
  for (const auto& axis : sweep.axes) {
    has_n_s |= axis.parameter == "n_s";
    has_kappa_n_s |= axis.parameter == "kappa_n_s";
  }
  if (has_n_s && has_kappa_n_s) throw ConfigError("sweep cannot vary both n_s and kappa_n_s");

  const std::size_t outer = sweep.axes[0].values.size();
  const std::size_t inner = sweep.axes.size() == 2 ? sweep.axes[1].values.size() : 1;
  std::vector<SweepPoint> points;
  points.reserve(outer * inner);
  for (std::size_t i = 0; i < outer; ++i) {
    for (std::size_t j = 0; j < inner; ++j) {
      SweepPoint p;
      p.axis_values.push_back(sweep.axes[0].values[i]);
      if (sweep.axes.size() == 2) p.axis_values.push_back(sweep.axes[1].values[j]);
      if (analytic) p.scenario = *config.scenario;
      if (!analytic) p.design = *config.design;
      double kappa_n_s = 0.0;
      for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
        const std::string& name = sweep.axes[a].parameter;
        const double v = p.axis_values[a];
        if (name == "kappa") {
          p.scenario.kappa = v;
          p.design.kappa = v;
        } else if (name == "m_max") {
          p.scenario.m_max = static_cast<std::int64_t>(v);
          p.design.m_max = static_cast<std::int64_t>(v);
        } else if (name == "n_s") {
          p.scenario.n_s = v;
        } else if (name == "kappa_n_s") {
          kappa_n_s = v;
        } else if (name == "pr_e_target") {
          p.design.pr_e_target = v;
        }
      }
      if (has_kappa_n_s) p.scenario.n_s = kappa_n_s / p.scenario.kappa;
      try {
        if (analytic) {
          p.scenario.validate();
        } else {
          detail::require(p.design.kappa > 0.0 && p.design.kappa < 1.0,
                          "swept kappa must lie in (0, 1)");
          detail::require(p.design.pr_e_target > 0.0, "swept pr_e_target must be positive");
        }
      } catch (const DomainError& e) {
        throw ConfigError("sweep point " + std::to_string(points.size()) + ": " + e.what());
      }
      points.push_back(std::move(p));
    }
  }
  return points;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file " + path.string());
  f << text;
}

void emit(const std::vector<Table>& tables, const std::optional<std::string>& out_path,
          report::Format format, std::ostream& out) {
  const char* ext = format == report::Format::Csv ? ".csv" : ".json";
  if (out_path) {
    const std::filesystem::path primary(*out_path);
    for (std::size_t i = 0; i < tables.size(); ++i) {
      std::filesystem::path path = primary;
      if (i > 0) {
        path = primary.parent_path() /
               (primary.stem().string() + "." + tables[i].name + ext);
      }
      write_file(path, report::render(tables[i], format));
    }
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables.size() > 1) out << (i ? "\n" : "") << "# " << tables[i].name << "\n";
    out << report::render(tables[i], format);
  }
}

}  // namespace

std::vector<Table> cmd_analytic(const ConfigDocument& config, bool with_pmf) {
  const Scenario& s = require_scenario(config);
  const Metrics m = fpr_metrics(s);
  const double n_b = config.impairments ? config.impairments->n_b : 0.0;

  std::vector<Table> tables(1);
  tables[0].name = "analytic";
  RowBuilder row(tables[0]);
  add_metrics(row, s, m);
  add_bounds(row, s, n_b);
  row.finish();

  if (with_pmf) {
    Table& pmf = tables.emplace_back();
    pmf.name = "stop_pmf";
    const double log_q = log_no_click(s.source, s.kappa, s.n_s);
    const double log_click = std::log(-std::expm1(log_q));
    for (std::int64_t k = 1; k <= s.m_max; ++k) {
      const double steps = static_cast<double>(k - 1);
      const double log_p = k == s.m_max ? (k == 1 ? 0.0 : steps * log_q)
                                        : (k == 1 ? log_click : steps * log_q + log_click);
      RowBuilder(pmf)
          .add("m", k)
          .add_probability("probability", m.stop_pmf[static_cast<std::size_t>(k - 1)], log_p)
          .finish();
    }
  }
  return tables;
}

SimulateResult cmd_simulate(const ConfigDocument& config, const SimulateSettings& settings) {
  const Scenario& s = require_scenario(config);
  const Impairments imp = config.impairments.value_or(Impairments::pure_loss());
  if (settings.trials < 1) throw ConfigError("--trials must be at least 1");

  PredictedMetrics analytic = predicted_metrics(s, imp);
  if (settings.adjust_analytic) settings.adjust_analytic(analytic);
  const EstimatedMetrics est =
      estimate_metrics(s, imp, settings.trials, settings.seed, settings.threads);
  const double n = static_cast<double>(settings.trials);

  const double var_f = analytic.p_f * (1.0 - analytic.p_f);
  const double var_m = analytic.p_m * (1.0 - analytic.p_m);

  struct Line {
    const char* quantity;
    double analytic;
    double analytic_ln;
    bool probability;
    double estimate;
    double stderr_;
    double z;
  };
  const Line lines[] = {
      {"p_f", analytic.p_f, analytic.log_p_f, true, est.p_f_hat, est.p_f_stderr,
       probability_z(est.p_f_hat, analytic.p_f, var_f, n, 1.0)},
      {"p_m", analytic.p_m, analytic.log_p_m, true, est.p_m_hat, est.p_m_stderr,
       probability_z(est.p_m_hat, analytic.p_m, var_m, n, 1.0)},
      {"pr_e", analytic.pr_e, std::log(analytic.pr_e), true, est.pr_e_hat, est.pr_e_stderr,
       probability_z(est.pr_e_hat, analytic.pr_e, var_f + var_m, n, 0.5)},
      {"mean_pulses", analytic.mean_pulses, 0.0, false, est.mean_pulses_hat,
       est.mean_pulses_stderr,
       mean_z(est.mean_pulses_hat, analytic.mean_pulses, est.mean_pulses_stderr, n)},
      {"mean_pulses_h0", analytic.mean_pulses_h0, 0.0, false, est.mean_pulses_h0_hat,
       est.mean_pulses_h0_stderr,
       mean_z(est.mean_pulses_h0_hat, analytic.mean_pulses_h0, est.mean_pulses_h0_stderr, n)},
      {"mean_pulses_h1", analytic.mean_pulses_h1, 0.0, false, est.mean_pulses_h1_hat,
       est.mean_pulses_h1_stderr,
       mean_z(est.mean_pulses_h1_hat, analytic.mean_pulses_h1, est.mean_pulses_h1_stderr, n)},
  };

  SimulateResult result;
  result.table.name = "simulate";
  for (const Line& line : lines) {
    RowBuilder(result.table)
        .add("quantity", std::string(line.quantity))
        .add("analytic", line.analytic)
        .add("analytic_ln", line.probability ? report::Cell(line.analytic_ln)
                                             : report::Cell(std::monostate{}))
        .add("estimate", line.estimate)
        .add("stderr", line.stderr_)
        .add("z_score", line.z)
        .add("trials", static_cast<std::int64_t>(settings.trials))
        .add("seed", hex_seed(settings.seed))
        .finish();
    result.max_abs_z = std::max(result.max_abs_z, std::abs(line.z));
  }
  result.check_passed = !(result.max_abs_z > kCheckZLimit);
  return result;
}

std::vector<Table> cmd_design(const ConfigDocument& config) {
  if (!config.design) throw ConfigError("missing config section \"design\"");
  const DesignSection& d = *config.design;
  std::vector<Table> tables(1);
  tables[0].name = "advantage";
  {
    RowBuilder row(tables[0]);
    add_advantage(row, advantage_report(d.kappa, d.m_max, d.pr_e_target));
    row.finish();
  }
  if (!d.saturation_m.empty()) {
    Table& t = tables.emplace_back();
    t.name = "saturation";
    for (const auto& p : saturation_curve(d.kappa, d.pr_e_target, d.saturation_m)) {
      RowBuilder(t)
          .add("kappa", d.kappa)
          .add("pr_e_target", d.pr_e_target)
          .add("m_max", p.m_max)
          .add("advantage_db", p.advantage_db)
          .finish();
    }
  }
  if (d.confluence) {
    const ConfluenceReport c = confluence_check(*d.confluence);
    Table& grid = tables.emplace_back();
    grid.name = "confluence";
    for (const auto& p : c.points) {
      RowBuilder(grid)
          .add("kappa", p.kappa)
          .add("pr_e_number", p.pr_e_number)
          .add("total_photons", p.total_photons)
          .add("pr_e_coherent", p.pr_e_coherent)
          .add("ratio", p.ratio)
          .finish();
    }
    Table& summary = tables.emplace_back();
    summary.name = "confluence_summary";
    RowBuilder(summary)
        .add("points", static_cast<std::int64_t>(c.points.size()))
        .add("max_ratio", c.max_ratio)
        .finish();
  }
  return tables;
}

std::vector<Table> cmd_bins(const ConfigDocument& config) {
  if (!config.geometry) throw ConfigError("missing config section \"geometry\"");
  const Geometry& g = config.geometry->geometry;
  const Resolutions r = resolutions(g);
  const DwellChanges d = dwell_changes(g);
  const BinBudget b = uncertainty_bins(g);
  const double n_b = config.impairments ? config.impairments->n_b : 0.0;
  const double dcr = config.impairments ? config.impairments->dcr : 0.0;
  const FalseAlarmBudget fa = impairment_false_alarm(b, g, n_b, dcr);

  std::optional<double> reference = config.geometry->reference_p_m;
  if (!reference && config.scenario) reference = fpr_metrics(*config.scenario).p_m;

  std::vector<Table> tables(1);
  tables[0].name = "bins";
  RowBuilder row(tables[0]);
  row.add("theta_res_rad", r.theta_res_rad)
      .add("range_res_m", r.range_res_m)
      .add("doppler_res_hz", r.doppler_res_hz)
      .add("t_rep_s", r.t_rep_s)
      .add("t_dwell_s", r.t_dwell_s)
      .add("covers_range_window", r.covers_range_window)
      .add("delta_theta_rad", d.delta_theta_rad)
      .add("delta_range_m", d.delta_range_m)
      .add("delta_doppler_hz", d.delta_doppler_hz)
      .add("doppler_shift_hz", d.doppler_shift_hz)
      .add("b_range", b.b_range)
      .add("b_doppler", b.b_doppler)
      .add("b_total", b.b_total)
      .add("n_b", n_b)
      .add("dcr_cps", dcr)
      .add_probability("p_f_background", fa.p_f_background, fa.log_p_f_background)
      .add_probability("p_f_dark", fa.p_f_dark, fa.log_p_f_dark)
      .add_probability("p_f_total", fa.p_f_total, fa.log_p_f_total)
      .add("reference_p_m", reference ? report::Cell(*reference) : report::Cell(std::monostate{}))
      .add("budget_ok", reference ? report::Cell(impairment_budget_ok(fa.p_f_total, *reference))
                                  : report::Cell(std::monostate{}));
  row.finish();
  return tables;
}

std::vector<Table> cmd_sweep(const ConfigDocument& config, std::int64_t start_row) {
  if (!config.sweep) throw ConfigError("missing config section \"sweep\"");
  if (start_row < 0) throw ConfigError("--start-row must be nonnegative");
  const std::vector<SweepPoint> points = expand_sweep(config);
  const SweepSection& sweep = *config.sweep;

  std::vector<Table> tables(1);
  tables[0].name = "sweep";
  for (std::size_t i = static_cast<std::size_t>(start_row); i < points.size(); ++i) {
    const SweepPoint& p = points[i];
    RowBuilder row(tables[0]);
    row.add("row_index", static_cast<std::int64_t>(i));
    for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
      row.add("sweep_" + sweep.axes[a].parameter, p.axis_values[a]);
    }
    if (sweep.mode == SweepMode::Analytic) {
      const Metrics m = fpr_metrics(p.scenario);
      add_metrics(row, p.scenario, m);
      const double n_t = static_cast<double>(p.scenario.m_max) * p.scenario.n_s;
      const BoundValue nair = nair_bound(p.scenario.kappa, n_t, Regime::Exact);
      row.add("n_t", n_t).add_probability("nair_exact", nair.value, nair.log_value);
    } else {
      add_advantage(row, advantage_report(p.design.kappa, p.design.m_max, p.design.pr_e_target));
    }
    row.finish();
  }
  if (tables[0].rows.empty() && tables[0].columns.empty()) {
    // Resumed past the end: keep the header stable by rendering one row and dropping it.
    auto probe = config;
    auto full = cmd_sweep(probe, 0);
    tables[0].columns = full[0].columns;
  }
  return tables;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-photon radar performance toolkit", "fpr"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;
  std::string format_name = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> threads;
  bool check = false;
  bool pmf = false;
  std::int64_t start_row = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format_name, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto* analytic = app.add_subcommand("analytic", "closed-form metrics and reference bounds");
  add_common(analytic);
  analytic->add_flag("--pmf", pmf, "also emit the stopping-time pmf");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates against analytic values");
  add_common(simulate);
  simulate->add_option("--seed", seed, "master seed (u64)");
  simulate->add_option("--trials", trials, "trials per hypothesis");
  simulate->add_option("--threads", threads, "worker threads (0 = all cores)");
  simulate->add_flag("--check", check, "exit 3 if any |z| exceeds 5");
  auto* design = app.add_subcommand("design", "operating point and advantage over Nair's bound");
  add_common(design);
  auto* bins = app.add_subcommand("bins", "resolutions, bin budget and false-alarm budget");
  add_common(bins);
  auto* sweep = app.add_subcommand("sweep", "grid of analytic or design rows");
  add_common(sweep);
  sweep->add_option("--start-row", start_row, "first row index to emit (resume)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("fpr");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigInvalid;
  }

  const auto format = format_name == "json" ? report::Format::Json : report::Format::Csv;
  try {
    ConfigDocument config = load_config(config_path);
    std::vector<Table> tables;
    int code = kExitOk;
    if (*analytic) {
      tables = cmd_analytic(config, pmf);
    } else if (*simulate) {
      SimulateSettings settings;
      const SimulationSection sim = config.simulation.value_or(SimulationSection{});
      settings.trials = trials.value_or(sim.trials.value_or(kDefaultTrials));
      settings.seed = seed.value_or(sim.seed.value_or(kDefaultSeed));
      settings.threads = threads.value_or(sim.threads.value_or(0));
      settings.check = check;
      SimulateResult result = cmd_simulate(config, settings);
      tables.push_back(std::move(result.table));
      if (check && !result.check_passed) {
        err << "fpr: simulation disagrees with the analytic model (max |z| = "
            << report::format_number(result.max_abs_z) << " > " << kCheckZLimit << ")\n";
        code = kExitCheckFailed;
      }
    } else if (*design) {
      tables = cmd_design(config);
    } else if (*bins) {
      tables = cmd_bins(config);
    } else if (*sweep) {
      tables = cmd_sweep(config, start_row);
    }
    emit(tables, out_path, format, out);
    return code;
  } catch (const ConfigError& e) {
    err << "fpr: " << e.what() << "\n";
    return kExitConfigInvalid;
  } catch (const UnreachableTarget& e) {
    err << "fpr: unreachable design target: " << e.what() << "\n";
    return kExitUnreachable;
  } catch (const DomainError& e) {
    err << "fpr: invalid parameters: " << e.what() << "\n";
    return kExitConfigInvalid;
  }
}

}  // namespace fpr::cli
