#include "fpr/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fpr/errors.hpp"
#include "fpr/units.hpp"

namespace fpr {
namespace {

using nlohmann::json;

// Reads typed fields from one JSON object and remembers which keys were used,
// so leftovers can be reported as unknown.
class SectionReader {
 public:
  SectionReader(const json& object, std::string section)
      : object_(object), section_(std::move(section)) {
    if (!object_.is_object()) fail("section must be a JSON object");
  }

  [[nodiscard]] bool has(const std::string& key) const { return object_.contains(key); }

  double number(const std::string& key) {
    const json& v = get(key);
    if (!v.is_number()) fail("\"" + key + "\" must be a number");
    return v.get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::int64_t integer(const std::string& key) {
    const json& v = get(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
    }
    fail("\"" + key + "\" must be an integer");
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = get(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    const std::int64_t i = integer(key);
    if (i < 0) fail("\"" + key + "\" must be nonnegative");
    return static_cast<std::uint64_t>(i);
  }

  double quantity(const std::string& key, Dimension dimension) {
    const json& v = get(key);
    if (!v.is_string()) {
      fail("\"" + key + "\" is dimensional (" + to_string(dimension) +
           ") and must be a string with a unit, e.g. \"1.5 km\"");
    }
    try {
      return parse_quantity(v.get<std::string>(), dimension);
    } catch (const UnitError& e) {
      fail("\"" + key + "\": " + e.what());
    }
  }

  std::optional<double> optional_quantity(const std::string& key, Dimension dimension) {
    if (!has(key)) return std::nullopt;
    return quantity(key, dimension);
  }

  std::string string(const std::string& key) {
    const json& v = get(key);
    if (!v.is_string()) fail("\"" + key + "\" must be a string");
    return v.get<std::string>();
  }

  const json& raw(const std::string& key) { return get(key); }

  void finish() const {
    for (const auto& [key, _] : object_.items()) {
      if (!used_.count(key)) fail("unknown key \"" + key + "\"");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config section \"" + section_ + "\": " + what);
  }

 private:
  const json& get(const std::string& key) {
    if (!object_.contains(key)) fail("missing required key \"" + key + "\"");
    used_.insert(key);
    return object_.at(key);
  }

  const json& object_;
  std::string section_;
  std::set<std::string> used_;
};

template <class Validate>
void validate_as(const std::string& section, Validate&& validate) {
  try {
    validate();
  } catch (const DomainError& e) {
    throw ConfigError("config section \"" + section + "\": " + e.what());
  }
}

Source parse_source(SectionReader& r) {
  const std::string s = r.string("source");
  if (s == "number") return Source::NumberState;
  if (s == "coherent") return Source::CoherentState;
  r.fail("\"source\" must be \"number\" or \"coherent\", got \"" + s + "\"");
}

Scenario parse_scenario(const json& j) {
  SectionReader r(j, "scenario");
  Scenario s;
  s.source = parse_source(r);
  s.kappa = r.number("kappa");
  s.n_s = r.number("n_s");
  s.m_max = r.integer("m_max");
  r.finish();
  validate_as("scenario", [&] { s.validate(); });
  return s;
}

Impairments parse_impairments(const json& j) {
  SectionReader r(j, "impairments");
  Impairments imp;
  if (r.has("eta")) imp.eta = r.number("eta");
  if (r.has("n_b")) imp.n_b = r.number("n_b");
  if (r.has("dcr")) imp.dcr = r.quantity("dcr", Dimension::CountRate);
  if (r.has("bins_total")) imp.bins_total = r.integer("bins_total");
  if (r.has("bins_range")) imp.bins_range = r.integer("bins_range");
  if (r.has("pulse_duration")) imp.pulse_duration_s = r.quantity("pulse_duration", Dimension::Time);
  r.finish();
  validate_as("impairments", [&] { imp.validate(); });
  return imp;
}

GeometrySection parse_geometry(const json& j) {
  SectionReader r(j, "geometry");
  GeometrySection sec;
  Geometry& g = sec.geometry;
  g.wavelength_m = r.quantity("wavelength", Dimension::Length);
  g.aperture_m = r.quantity("aperture", Dimension::Length);
  g.range_m = r.quantity("range", Dimension::Length);
  g.pulse_duration_s = r.quantity("pulse_duration", Dimension::Time);
  g.pulses = r.integer("pulses");
  g.range_uncertainty_m = r.optional_quantity("range_uncertainty", Dimension::Length).value_or(0.0);
  g.doppler_uncertainty_hz =
      r.optional_quantity("doppler_uncertainty", Dimension::Frequency).value_or(0.0);
  g.v_transverse_mps = r.optional_quantity("v_transverse", Dimension::Speed).value_or(0.0);
  g.v_longitudinal_mps = r.optional_quantity("v_longitudinal", Dimension::Speed).value_or(0.0);
  g.accel_longitudinal_mps2 =
      r.optional_quantity("accel_longitudinal", Dimension::Acceleration).value_or(0.0);
  g.repetition_s = r.optional_quantity("repetition_period", Dimension::Time);
  sec.reference_p_m = r.optional_number("reference_p_m");
  r.finish();
  validate_as("geometry", [&] {
    g.validate();
    resolutions(g);
    detail::require(!sec.reference_p_m || (*sec.reference_p_m >= 0.0 && *sec.reference_p_m <= 1.0),
                    "reference_p_m must be a probability");
  });
  return sec;
}

ConfluenceGrid parse_confluence(const json& j) {
  ConfluenceGrid grid;
  if (j.is_boolean()) return grid;
  SectionReader r(j, "design.confluence");
  if (r.has("kappa_min")) grid.kappa_min = r.number("kappa_min");
  if (r.has("kappa_max")) grid.kappa_max = r.number("kappa_max");
  if (r.has("kappa_per_decade")) grid.kappa_points_per_decade = r.number("kappa_per_decade");
  if (r.has("pr_e_min")) grid.pr_e_min = r.number("pr_e_min");
  if (r.has("pr_e_max")) grid.pr_e_max = r.number("pr_e_max");
  if (r.has("pr_e_per_decade")) grid.pr_e_points_per_decade = r.number("pr_e_per_decade");
  r.finish();
  if (!(grid.kappa_min > 0.0 && grid.kappa_min <= grid.kappa_max && grid.kappa_max <= 1e-3)) {
    r.fail("confluence kappa range must satisfy 0 < kappa_min <= kappa_max <= 1e-3");
  }
  if (!(grid.pr_e_min >= 1e-9 && grid.pr_e_min <= grid.pr_e_max && grid.pr_e_max <= 1e-1)) {
    r.fail("confluence Pr(e) range must lie within [1e-9, 1e-1]");
  }
  if (!(grid.kappa_points_per_decade > 0.0 && grid.pr_e_points_per_decade > 0.0)) {
    r.fail("points per decade must be positive");
  }
  return grid;
}

DesignSection parse_design(const json& j) {
  SectionReader r(j, "design");
  DesignSection d;
  d.kappa = r.number("kappa");
  d.m_max = r.integer("m_max");
  d.pr_e_target = r.number("pr_e_target");
  if (r.has("saturation_m")) {
    const json& list = r.raw("saturation_m");
    if (!list.is_array() || list.empty()) r.fail("\"saturation_m\" must be a nonempty array");
    for (const auto& v : list) {
      if (!v.is_number() || v.get<double>() != std::floor(v.get<double>()) || v.get<double>() < 1) {
        r.fail("\"saturation_m\" entries must be positive integers");
      }
      const auto m = static_cast<std::int64_t>(v.get<double>());
      if (!d.saturation_m.empty() && m <= d.saturation_m.back()) {
        r.fail("\"saturation_m\" must be strictly increasing");
      }
      d.saturation_m.push_back(m);
    }
  }
  if (r.has("confluence")) d.confluence = parse_confluence(r.raw("confluence"));
  r.finish();
  if (!(d.kappa > 0.0 && d.kappa < 1.0)) r.fail("\"kappa\" must lie in (0, 1)");
  if (d.m_max < 1) r.fail("\"m_max\" must be at least 1");
  // Targets at or above 1/2 are a design outcome (unreachable), not a schema error.
  if (!(d.pr_e_target > 0.0 && d.pr_e_target < 1.0)) {
    r.fail("\"pr_e_target\" must lie in (0, 1)");
  }
  return d;
}

SweepAxis parse_axis(const json& j, SweepMode mode) {
  SectionReader r(j, "sweep.axes");
  SweepAxis axis;
  axis.parameter = r.string("parameter");
  const bool analytic = mode == SweepMode::Analytic;
  const bool known = analytic ? (axis.parameter == "kappa" || axis.parameter == "n_s" ||
                                 axis.parameter == "kappa_n_s" || axis.parameter == "m_max")
                              : (axis.parameter == "kappa" || axis.parameter == "m_max" ||
                                 axis.parameter == "pr_e_target");
  if (!known) {
    r.fail("parameter \"" + axis.parameter + "\" cannot be swept in " +
           (analytic ? "analytic" : "design") + " mode");
  }
  if (r.has("values")) {
    const json& list = r.raw("values");
    if (!list.is_array()) r.fail("\"values\" must be an array");
    for (const auto& v : list) {
      if (!v.is_number()) r.fail("\"values\" entries must be numbers");
      axis.values.push_back(v.get<double>());
    }
  } else {
    const double from = r.number("from");
    const double to = r.number("to");
    const std::int64_t points = r.integer("points");
    const std::string spacing = r.has("spacing") ? r.string("spacing") : "linear";
    if (spacing != "linear" && spacing != "log") r.fail("\"spacing\" must be linear or log");
    if (points < 1 || from > to) r.fail("empty range for \"" + axis.parameter + "\"");
    if (spacing == "log" && from <= 0.0) r.fail("log spacing needs a positive lower end");
    axis.values = axis_values(from, to, points, spacing == "log" ? Spacing::Log : Spacing::Linear);
  }
  r.finish();
  if (axis.values.empty()) r.fail("empty range for \"" + axis.parameter + "\"");
  if (axis.parameter == "m_max") {
    for (double& v : axis.values) {
      const double rounded = std::round(v);
      if (std::abs(v - rounded) > 1e-9 * std::max(1.0, rounded) || rounded < 1.0) {
        r.fail("\"m_max\" values must be positive integers");
      }
      v = rounded;
    }
  }
  return axis;
}

SweepSection parse_sweep(const json& j) {
  SectionReader r(j, "sweep");
  SweepSection s;
  const std::string mode = r.has("mode") ? r.string("mode") : "analytic";
  if (mode == "analytic") {
    s.mode = SweepMode::Analytic;
  } else if (mode == "design") {
    s.mode = SweepMode::Design;
  } else {
    r.fail("\"mode\" must be analytic or design");
  }
  const json& axes = r.raw("axes");
  if (!axes.is_array() || axes.empty() || axes.size() > 2) {
    r.fail("\"axes\" must list one or two swept parameters");
  }
  for (const auto& a : axes) s.axes.push_back(parse_axis(a, s.mode));
  if (s.axes.size() == 2 && s.axes[0].parameter == s.axes[1].parameter) {
    r.fail("the two sweep axes must name different parameters");
  }
  r.finish();
  return s;
}

SimulationSection parse_simulation(const json& j) {
  SectionReader r(j, "simulation");
  SimulationSection s;
  if (r.has("trials")) s.trials = r.unsigned_integer("trials");
  if (r.has("seed")) s.seed = r.unsigned_integer("seed");
  if (r.has("threads")) s.threads = static_cast<unsigned>(r.unsigned_integer("threads"));
  r.finish();
  if (s.trials && *s.trials == 0) r.fail("\"trials\" must be at least 1");
  return s;
}

}  // namespace

std::vector<double> axis_values(double from, double to, std::int64_t points, Spacing spacing) {
  std::vector<double> out;
  if (points < 1 || from > to) return out;
  if (points == 1) return {from};
  out.reserve(static_cast<std::size_t>(points));
  for (std::int64_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back(spacing == Spacing::Log ? from * std::pow(to / from, t)
                                          : from + (to - from) * t);
  }
  out.back() = to;
  return out;
}

ConfigDocument parse_config(const json& document) {
  SectionReader root(document, "<root>");
  ConfigDocument doc;
  const std::int64_t version = root.integer("schema_version");
  if (version != kSchemaVersion) {
    root.fail("unsupported schema_version " + std::to_string(version) + " (expected " +
              std::to_string(kSchemaVersion) + ")");
  }
  if (root.has("description")) root.string("description");
  if (root.has("scenario")) doc.scenario = parse_scenario(root.raw("scenario"));
  if (root.has("impairments")) doc.impairments = parse_impairments(root.raw("impairments"));
  if (root.has("geometry")) doc.geometry = parse_geometry(root.raw("geometry"));
  if (root.has("design")) doc.design = parse_design(root.raw("design"));
  if (root.has("sweep")) doc.sweep = parse_sweep(root.raw("sweep"));
  if (root.has("simulation")) doc.simulation = parse_simulation(root.raw("simulation"));
  root.finish();
  return doc;
}

ConfigDocument parse_config_text(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(document);
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace fpr
