#pragma once

#include <string>
#include <string_view>

#include "dmsq/model.hpp"

namespace dmsq {

/// Parses a real number, also accepting multiples of pi: "pi", "-pi/4",
/// "3pi/2", "0.5*pi", "2*pi". Locale-independent. Throws std::invalid_argument.
double parse_real(std::string_view text);

/// Parameter paths address SystemConfig fields:
///   kappa, opa_gain, opa_phase (also cavity.kappa, ...)
///   mechanical[i].omega|gamma|coupling|nbar, hopping[i].strength|phase
///   with i a 0-based index or `*` for every entry, and the derived path
///   `cooperativity`, which sets G_l = sqrt(C kappa gamma_l) on every mode.
/// Unknown paths and out-of-range indices throw ConfigError.
void set_parameter(SystemConfig& cfg, std::string_view path, double value);

/// For `*` paths returns the first entry.
double get_parameter(const SystemConfig& cfg, std::string_view path);

/// Syntax check only; indices are not range-checked.
bool is_parameter_path(std::string_view path);

/// Applies one `path=value` assignment.
void apply_override(SystemConfig& cfg, std::string_view assignment);

}  // namespace dmsq
