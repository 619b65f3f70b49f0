#include "dmsq/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dmsq/error.hpp"
#include "dmsq/format.hpp"
#include "dmsq/parameters.hpp"

namespace dmsq {
namespace {

constexpr int kCsvDigits = 12;

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t grid_size(const SweepSpec& spec) {
  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= a.values.size();
  return total;
}

std::vector<double> grid_point(const SweepSpec& spec, std::size_t flat) {
  std::vector<double> values(spec.axes.size());
  for (std::size_t k = spec.axes.size(); k-- > 0;) {
    const auto& axis = spec.axes[k];
    values[k] = axis.values[flat % axis.values.size()];
    flat /= axis.values.size();
  }
  return values;
}

struct FieldRef {
  enum class Kind { kStable, kMargin, kS, kVar } kind;
  Quadrature quad = Quadrature::X;
  std::size_t output = 0;
};

FieldRef parse_field(const std::vector<ModeId>& outputs, std::string_view field) {
  if (field == "stable") return {FieldRef::Kind::kStable};
  if (field == "margin") return {FieldRef::Kind::kMargin};
  FieldRef ref{FieldRef::Kind::kS};
  std::string_view rest;
  if (field.starts_with("S_")) {
    rest = field.substr(2);
  } else if (field.starts_with("var_")) {
    ref.kind = FieldRef::Kind::kVar;
    rest = field.substr(4);
  } else {
    throw std::invalid_argument("unknown report field '" + std::string(field) + "'");
  }
  if (rest.size() < 3 || rest[1] != '_' || (rest[0] != 'X' && rest[0] != 'Y')) {
    throw std::invalid_argument("unknown report field '" + std::string(field) + "'");
  }
  ref.quad = rest[0] == 'X' ? Quadrature::X : Quadrature::Y;
  const ModeId mode = ModeId::parse(rest.substr(2));
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i] == mode) {
      ref.output = i;
      return ref;
    }
  }
  throw std::invalid_argument("field '" + std::string(field) + "' refers to a mode that is not an output");
}

double field_value(const FieldRef& ref, const SweepRow& row) {
  switch (ref.kind) {
    case FieldRef::Kind::kStable: return row.stable ? 1.0 : 0.0;
    case FieldRef::Kind::kMargin: return row.margin;
    case FieldRef::Kind::kS:
    case FieldRef::Kind::kVar: {
      if (!row.stable || ref.output >= row.modes.size()) return std::nan("");
      const ModeSqueezing& m = row.modes[ref.output];
      if (ref.kind == FieldRef::Kind::kS) return ref.quad == Quadrature::X ? m.s_x_db : m.s_y_db;
      return ref.quad == Quadrature::X ? m.var_x : m.var_y;
    }
  }
  return std::nan("");
}

}  // namespace

std::string tool_version() { return DMSQ_VERSION_STRING; }

Axis Axis::linear(std::string path, double start, double stop, std::size_t count) {
  Axis a{std::move(path), {}, GridScale::kLinear};
  a.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    a.values[i] = count == 1 ? start : std::lerp(start, stop, static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return a;
}

Axis Axis::logarithmic(std::string path, double start, double stop, std::size_t count) {
  Axis a{std::move(path), {}, GridScale::kLog};
  a.values.resize(count);
  const double l0 = std::log10(start), l1 = std::log10(stop);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    a.values[i] = std::pow(10.0, l0 + (l1 - l0) * t);
  }
  return a;
}

Axis Axis::explicit_values(std::string path, std::vector<double> values) {
  return Axis{std::move(path), std::move(values), GridScale::kExplicit};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("DMSQ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate_sweep_spec(const SweepSpec& spec) {
  if (spec.axes.empty()) throw ConfigError("sweep.axes", "at least one axis is required");
  if (spec.axes.size() > 2) throw ConfigError("sweep.axes", "at most two axes are supported");
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    const auto& a = spec.axes[i];
    const std::string field = "sweep.axes[" + std::to_string(i) + "]";
    if (!is_parameter_path(a.path)) throw ConfigError(field + ".path", "unknown parameter path '" + a.path + "'");
    if (a.values.empty()) throw ConfigError(field, "grid is empty");
    for (double v : a.values) {
      if (!std::isfinite(v)) throw ConfigError(field, "grid contains a non-finite value");
    }
    SystemConfig probe = spec.base;
    set_parameter(probe, a.path, a.values.front());  // range-checks indices
  }
  for (const ModeId m : spec.outputs) {
    if (!m.is_optical() && m.index() >= spec.base.n_mech) {
      throw ConfigError("sweep.outputs", "mode " + m.name() + " does not exist");
    }
  }
}

SweepRow evaluate_point(const SweepSpec& spec, const std::vector<double>& values) {
  SystemConfig cfg = spec.base;
  for (std::size_t k = 0; k < spec.axes.size(); ++k) set_parameter(cfg, spec.axes[k].path, values[k]);
  const ValidatedConfig vcfg = validate_config(std::move(cfg));
  const SqueezingReport report = analyze(vcfg);
  SweepRow row;
  row.params = values;
  row.stable = report.stable;
  row.margin = report.margin;
  if (report.stable) {
    for (const ModeId m : spec.outputs) row.modes.push_back(*report.find(m));
  }
  return row;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  validate_sweep_spec(spec);
  SweepResult result;
  result.name = spec.name;
  for (const auto& a : spec.axes) result.axis_paths.push_back(a.path);
  result.outputs = spec.outputs;
  result.metadata.tool_version = tool_version();
  result.metadata.config_hash = fnv1a_hex(canonical_text(spec));
  result.metadata.timestamp = utc_timestamp();

  const std::size_t total = grid_size(spec);
  result.rows.resize(total);
  unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        result.rows[i] = evaluate_point(spec, grid_point(spec, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::vector<std::string> csv_header(const SweepResult& result) {
  std::vector<std::string> cols = result.axis_paths;
  cols.emplace_back("stable");
  for (const ModeId m : result.outputs) {
    const std::string n = m.name();
    cols.push_back("S_X_" + n);
    cols.push_back("S_Y_" + n);
    cols.push_back("var_X_" + n);
    cols.push_back("var_Y_" + n);
  }
  return cols;
}

void export_csv(const SweepResult& result, std::ostream& out) {
  const auto header = csv_header(result);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : result.rows) {
    std::string line;
    for (double p : row.params) line += format_real(p, kCsvDigits) + ",";
    line += row.stable ? "1" : "0";
    for (std::size_t k = 0; k < result.outputs.size(); ++k) {
      if (row.stable && k < row.modes.size()) {
        const auto& m = row.modes[k];
        line += "," + format_real(m.s_x_db, kCsvDigits) + "," + format_real(m.s_y_db, kCsvDigits) +
                "," + format_real(m.var_x, kCsvDigits) + "," + format_real(m.var_y, kCsvDigits);
      } else {
        line += ",,,,";
      }
    }
    out << line << '\n';
  }
}

void export_csv(const SweepResult& result, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw Error("cannot open '" + destination.string() + "' for writing");
  export_csv(result, out);
  out.flush();
  if (!out) throw Error("write to '" + destination.string() + "' failed");
}

void export_json(const SweepResult& result, std::ostream& out) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["name"] = result.name;
  doc["metadata"] = {{"config_hash", result.metadata.config_hash},
                     {"tool_version", result.metadata.tool_version},
                     {"timestamp", result.metadata.timestamp}};
  doc["columns"] = csv_header(result);
  ojson rows = ojson::array();
  for (const auto& row : result.rows) {
    ojson o;
    for (std::size_t k = 0; k < result.axis_paths.size(); ++k) o[result.axis_paths[k]] = row.params[k];
    o["stable"] = row.stable;
    for (std::size_t k = 0; k < result.outputs.size(); ++k) {
      const std::string n = result.outputs[k].name();
      if (row.stable && k < row.modes.size()) {
        const auto& m = row.modes[k];
        o["S_X_" + n] = m.s_x_db;
        o["S_Y_" + n] = m.s_y_db;
        o["var_X_" + n] = m.var_x;
        o["var_Y_" + n] = m.var_y;
      } else {
        o["S_X_" + n] = nullptr;
        o["S_Y_" + n] = nullptr;
        o["var_X_" + n] = nullptr;
        o["var_Y_" + n] = nullptr;
      }
    }
    rows.push_back(std::move(o));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

double row_field(const SweepResult& result, const SweepRow& row, std::string_view field) {
  return field_value(parse_field(result.outputs, field), row);
}

std::string canonical_text(const SweepSpec& spec) {
  const auto r = [](double x) { return format_real(x, 17); };
  const auto list = [&](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + r(v[i]);
    return s + "]";
  };
  const SystemConfig& c = spec.base;
  std::ostringstream os;
  os << "name=" << spec.name << "\nunit=" << c.unit << "\nn_mech=" << c.n_mech << "\nkappa=" << r(c.kappa)
     << "\nomega=" << list(c.omega) << "\ngamma=" << list(c.gamma) << "\ncoupling=" << list(c.coupling)
     << "\nnbar=" << list(c.nbar) << "\nhop_strength=" << list(c.hop_strength)
     << "\nhop_phase=" << list(c.hop_phase) << "\nopa_gain=" << r(c.opa_gain)
     << "\nopa_phase=" << r(c.opa_phase) << "\n";
  for (const auto& a : spec.axes) os << "axis " << a.path << "=" << list(a.values) << "\n";
  os << "outputs=";
  for (const ModeId m : spec.outputs) os << m.name() << ";";
  os << "\n";
  return os.str();
}

Threshold find_threshold(const SweepSpec& spec, std::string_view field, double target,
                         const ThresholdOptions& options) {
  if (spec.axes.size() != 1) throw ConfigError("sweep.axes", "threshold search needs exactly one axis");
  const SweepResult grid = run_sweep(spec);
  const FieldRef ref = parse_field(spec.outputs, field);
  const Axis& axis = spec.axes.front();
  const bool log_axis = axis.scale == GridScale::kLog;

  const auto g = [&](const SweepRow& row) { return field_value(ref, row) - target; };
  for (std::size_t i = 0; i + 1 < grid.rows.size(); ++i) {
    const double g0 = g(grid.rows[i]);
    const double g1 = g(grid.rows[i + 1]);
    if (!std::isfinite(g0) || !std::isfinite(g1)) continue;
    if (g0 == 0.0) return {axis.values[i], axis.values[i], axis.values[i]};
    if (g0 * g1 > 0.0) continue;
    if (g1 == 0.0) return {axis.values[i + 1], axis.values[i + 1], axis.values[i + 1]};

    double lo = axis.values[i], hi = axis.values[i + 1];
    const bool lo_sign = g0 > 0.0;
    const auto mid_of = [&](double a, double b) { return log_axis ? std::sqrt(a * b) : 0.5 * (a + b); };
    for (std::size_t it = 0; it < options.max_bisections; ++it) {
      if (std::abs(hi - lo) <= options.relative_tolerance * std::max(std::abs(lo), std::abs(hi))) break;
      const double mid = mid_of(lo, hi);
      if (mid == lo || mid == hi) break;
      const double gm = g(evaluate_point(spec, {mid}));
      if (!std::isfinite(gm)) {
        throw NumericalError("threshold bracket for '" + std::string(field) + "' contains an unstable point");
      }
      if ((gm > 0.0) == lo_sign) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return {mid_of(lo, hi), std::min(lo, hi), std::max(lo, hi)};
  }
  throw NumericalError("no crossing of '" + std::string(field) + "' = " + format_real(target) +
                       " along " + axis.path + " within the grid span");
}

}  // namespace dmsq
