#include "fpr/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "fpr/geometry.hpp"

namespace fpr {
namespace {

struct UnitScale {
  std::string_view symbol;
  double to_si;
};

constexpr std::array kLength{UnitScale{"m", 1.0},   UnitScale{"km", 1e3},
                             UnitScale{"cm", 1e-2}, UnitScale{"mm", 1e-3},
                             UnitScale{"um", 1e-6}, UnitScale{"nm", 1e-9}};
constexpr std::array kTime{UnitScale{"s", 1.0}, UnitScale{"ms", 1e-3},
                           UnitScale{"us", 1e-6}, UnitScale{"ns", 1e-9}};
constexpr std::array kSpeed{UnitScale{"m/s", 1.0}, UnitScale{"km/s", 1e3},
                            UnitScale{"km/hr", 1e3 / 3600.0},
                            UnitScale{"km/h", 1e3 / 3600.0}};
constexpr std::array kAcceleration{UnitScale{"m/s^2", 1.0},
                                   UnitScale{"g", kStandardGravity}};
constexpr std::array kFrequency{UnitScale{"Hz", 1.0}, UnitScale{"kHz", 1e3},
                                UnitScale{"MHz", 1e6}, UnitScale{"GHz", 1e9}};
constexpr std::array kCountRate{UnitScale{"cps", 1.0}, UnitScale{"/s", 1.0},
                                UnitScale{"Hz", 1.0}};

template <std::size_t N>
bool lookup(const std::array<UnitScale, N>& table, std::string_view symbol,
            double& scale) {
  for (const auto& u : table) {
    if (u.symbol == symbol) {
      scale = u.to_si;
      return true;
    }
  }
  return false;
}

bool scale_for(Dimension dimension, std::string_view symbol, double& scale) {
  switch (dimension) {
    case Dimension::Length: return lookup(kLength, symbol, scale);
    case Dimension::Time: return lookup(kTime, symbol, scale);
    case Dimension::Speed: return lookup(kSpeed, symbol, scale);
    case Dimension::Acceleration: return lookup(kAcceleration, symbol, scale);
    case Dimension::Frequency: return lookup(kFrequency, symbol, scale);
    case Dimension::CountRate: return lookup(kCountRate, symbol, scale);
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(Dimension dimension) noexcept {
  switch (dimension) {
    case Dimension::Length: return "length";
    case Dimension::Time: return "time";
    case Dimension::Speed: return "speed";
    case Dimension::Acceleration: return "acceleration";
    case Dimension::Frequency: return "frequency";
    case Dimension::CountRate: return "count rate";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension dimension) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || !std::isfinite(value)) {
    throw UnitError("cannot read a number from \"" + std::string(text) + "\"");
  }
  const std::string_view symbol = trim(s.substr(static_cast<std::size_t>(end - s.data())));
  if (symbol.empty()) {
    throw UnitError("\"" + std::string(text) + "\" needs a " + to_string(dimension) +
                    " unit suffix");
  }
  double scale = 0.0;
  if (!scale_for(dimension, symbol, scale)) {
    throw UnitError("unit \"" + std::string(symbol) + "\" is not a " +
                    to_string(dimension) + " unit");
  }
  return value * scale;
}

}  // namespace fpr
