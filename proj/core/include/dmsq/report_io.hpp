#pragma once

#include <iosfwd>
#include <string>

#include "dmsq/analysis.hpp"
#include "dmsq/sweep.hpp"

namespace dmsq {

/// Wraps a single-point report as a one-row SweepResult (no axes) so it
/// shares the sweep CSV/JSON column schema.
SweepResult as_sweep_result(const SqueezingReport& report, std::size_t n_mech);

/// Full JSON document: stability, per-mode variances and dB, cooperativities,
/// physicality diagnostics. Keys for per-mode numbers follow the CSV schema.
std::string report_json(const SqueezingReport& report);

}  // namespace dmsq
