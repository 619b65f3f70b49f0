#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dmsq/analysis.hpp"
#include "dmsq/layout.hpp"
#include "dmsq/model.hpp"

namespace dmsq {

enum class GridScale { kLinear, kLog, kExplicit };

struct Axis {
  std::string path;  ///< parameter path, see parameters.hpp
  std::vector<double> values;
  GridScale scale = GridScale::kExplicit;

  static Axis linear(std::string path, double start, double stop, std::size_t count);
  static Axis logarithmic(std::string path, double start, double stop, std::size_t count);
  static Axis explicit_values(std::string path, std::vector<double> values);
};

/// Declarative grid over SystemConfig fields. Rows are produced in
/// row-major order of `axes` (the last axis varies fastest).
struct SweepSpec {
  std::string name;
  SystemConfig base;
  std::vector<Axis> axes;
  std::vector<ModeId> outputs;  ///< modes whose S/var columns are reported
};

struct SweepRow {
  std::vector<double> params;
  bool stable = false;
  double margin = 0.0;
  std::vector<ModeSqueezing> modes;  ///< one per output mode; empty when unstable
};

struct SweepMetadata {
  std::string config_hash;  ///< FNV-1a 64 of the canonical spec text, hex
  std::string tool_version;
  std::string timestamp;    ///< UTC, ISO 8601
};

struct SweepResult {
  std::string name;
  std::vector<std::string> axis_paths;
  std::vector<ModeId> outputs;
  std::vector<SweepRow> rows;
  SweepMetadata metadata;
};

struct SweepOptions {
  /// 0 selects DMSQ_THREADS if set, else hardware concurrency.
  unsigned threads = 0;
};

/// Thread cap from the DMSQ_THREADS environment variable, else hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Throws ConfigError for an empty axis list, an empty or non-finite grid or
/// an unknown parameter path.
void validate_sweep_spec(const SweepSpec& spec);

/// Evaluates one grid point: applies `values` to the axes, validates, solves.
SweepRow evaluate_point(const SweepSpec& spec, const std::vector<double>& values);

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Column names in export order: axis paths, `stable`, then
/// S_X_<m>, S_Y_<m>, var_X_<m>, var_Y_<m> per output mode.
std::vector<std::string> csv_header(const SweepResult& result);

/// Floats carry 12 significant digits; unstable rows leave squeezing
/// columns empty. Byte-identical output for identical results.
void export_csv(const SweepResult& result, std::ostream& out);
void export_csv(const SweepResult& result, const std::filesystem::path& destination);

/// One object per row with the CSV column names as keys, plus metadata.
void export_json(const SweepResult& result, std::ostream& out);

/// Value of a named report field on a row: `stable` (1/0), `margin`,
/// `S_X_<m>`, `S_Y_<m>`, `var_X_<m>`, `var_Y_<m>`. NaN when the row is
/// unstable. Throws std::invalid_argument for unknown fields.
double row_field(const SweepResult& result, const SweepRow& row, std::string_view field);

/// Named figure panels. A figure name ("fig5") expands to all its panels,
/// a panel name ("fig5a") to its variants. Throws std::invalid_argument for
/// unknown names.
std::vector<SweepSpec> figure_preset(std::string_view name);
std::vector<std::string> figure_names();

struct ThresholdOptions {
  double relative_tolerance = 1e-4;
  std::size_t max_bisections = 200;
};

struct Threshold {
  double value = 0.0;
  double lower = 0.0;  ///< final bracket
  double upper = 0.0;
};

/// Locates where `field` crosses `target` along the single axis of `spec`:
/// scans the grid for the first sign change, then bisects (in log space for
/// log axes). Throws NumericalError when the grid shows no sign change.
Threshold find_threshold(const SweepSpec& spec, std::string_view field, double target,
                         const ThresholdOptions& options = {});

/// Canonical text form of a spec (used for the metadata hash).
std::string canonical_text(const SweepSpec& spec);

std::string tool_version();

}  // namespace dmsq
