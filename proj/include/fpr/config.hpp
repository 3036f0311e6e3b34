// ============================================================================
// config.hpp -- the JSON run configuration (schema_version 1).
//
// Every section is optional; each present section is validated against its
// module invariants at load time so no command starts on a bad document.
// Unknown keys are errors. See docs/config.md for the full schema.
// ============================================================================
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fpr/analytic.hpp"
#include "fpr/design.hpp"
#include "fpr/geometry.hpp"
#include "fpr/montecarlo.hpp"

namespace fpr {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeometrySection {
  Geometry geometry;
  /// Pure-loss miss probability the false-alarm budget is judged against.
  std::optional<double> reference_p_m;
};

struct DesignSection {
  double kappa = 0.0;
  std::int64_t m_max = 1;
  double pr_e_target = 0.0;
  std::vector<std::int64_t> saturation_m;
  std::optional<ConfluenceGrid> confluence;
};

enum class Spacing { Linear, Log };
enum class SweepMode { Analytic, Design };

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

struct SweepSection {
  SweepMode mode = SweepMode::Analytic;
  std::vector<SweepAxis> axes;   // one or two; the last axis varies fastest
};

struct SimulationSection {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

struct ConfigDocument {
  std::optional<Scenario> scenario;
  std::optional<Impairments> impairments;
  std::optional<GeometrySection> geometry;
  std::optional<DesignSection> design;
  std::optional<SweepSection> sweep;
  std::optional<SimulationSection> simulation;
};

/// Throws ConfigError naming the offending section and key.
ConfigDocument parse_config(const nlohmann::json& document);
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument load_config(const std::string& path);

/// Axis values for a sweep range: `points` samples of [from, to], inclusive.
std::vector<double> axis_values(double from, double to, std::int64_t points,
                                Spacing spacing);

}  // namespace fpr
