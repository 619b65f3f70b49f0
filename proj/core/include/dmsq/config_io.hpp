#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dmsq/model.hpp"
#include "dmsq/sweep.hpp"

namespace dmsq {

enum class ConfigFormat { kAuto, kToml, kJson };

/// Reads a config with sections [cavity] (kappa, opa_gain, opa_phase),
/// [[mechanical]] (omega, gamma, coupling, nbar) and [[hopping]] (strength,
/// phase), plus an optional top-level `unit`. Numbers may be given as
/// strings with pi multiples ("pi/2"). Syntax errors throw ParseError with
/// line and column; bad values throw ConfigError naming the field. The
/// result is not validated.
SystemConfig parse_config(std::string_view text, ConfigFormat format = ConfigFormat::kAuto,
                          const std::string& source = "<input>");
SystemConfig load_config(const std::filesystem::path& path);

/// Same document plus a [sweep] section:
///   name = "..."; outputs = ["b1", "a"]
///   [[sweep.axes]] path = "opa_gain"
///                  grid = { start = 0, stop = 0.49, count = 50, scale = "linear" }
///   (or `values = [...]` instead of `grid`).
SweepSpec parse_sweep_spec(std::string_view text, ConfigFormat format = ConfigFormat::kAuto,
                           const std::string& source = "<input>");
SweepSpec load_sweep_spec(const std::filesystem::path& path);

ConfigFormat format_from_path(const std::filesystem::path& path);

}  // namespace dmsq
