// ============================================================================
// units.hpp -- "<number> <unit>" parsing for dimensional configuration fields.
//
// Bare numbers are rejected: a speed written "10" could mean m/s, km/hr or
// km/s, and the reference scenario is only self-consistent if the unit is
// explicit.
// ============================================================================
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpr {

enum class Dimension { Length, Time, Speed, Acceleration, Frequency, CountRate };

const char* to_string(Dimension dimension) noexcept;

class UnitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses e.g. "1.55 um", "10 km/hr", "0.1 g", "100 cps" into SI units
/// (m, s, m/s, m/s^2, Hz, 1/s).
double parse_quantity(std::string_view text, Dimension dimension);

}  // namespace fpr
