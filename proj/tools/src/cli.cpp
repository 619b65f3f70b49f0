#include "dmsq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dmsq/analysis.hpp"
#include "dmsq/config_io.hpp"
#include "dmsq/error.hpp"
#include "dmsq/format.hpp"
#include "dmsq/model.hpp"
#include "dmsq/parameters.hpp"
#include "dmsq/report_io.hpp"
#include "dmsq/steady_state.hpp"
#include "dmsq/sweep.hpp"

namespace dmsq::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

enum class OutputFormat { kText, kCsv, kJson };

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format;
  bool quiet = false;
  std::string figure;
};

// Short numbers for human-readable reports; files keep 12 digits.
std::string num(double x) { return format_real(x, 6); }

OutputFormat output_format(const Invocation& inv) {
  if (inv.format == "csv") return OutputFormat::kCsv;
  if (inv.format == "json") return OutputFormat::kJson;
  return OutputFormat::kText;
}

SystemConfig read_config(const Invocation& inv) {
  SystemConfig cfg = load_config(inv.config_path);
  for (const auto& o : inv.overrides) apply_override(cfg, o);
  return cfg;
}

/// Writes `text` to --out if given, else to `out`.
void emit(const Invocation& inv, const std::string& text, std::ostream& out) {
  if (inv.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(inv.out_path, std::ios::binary);
  if (!f) throw Error("cannot open '" + inv.out_path + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + inv.out_path + "'");
}

std::string csv_text(const SweepResult& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  export_csv(r, os);
  return os.str();
}

std::string json_text(const SweepResult& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  export_json(r, os);
  return os.str();
}

std::vector<std::size_t> census_or_empty(const NormalModeDecomposition& d) {
  if (d.max_coupling == 0.0) return {};
  return dark_mode_census(d);
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Invocation& inv, std::ostream& out) {
  const ValidatedConfig cfg = validate_config(read_config(inv));
  const SqueezingReport report = analyze(cfg);
  const NormalModeDecomposition modes = mechanical_normal_modes(cfg);
  const auto dark = census_or_empty(modes);

  switch (output_format(inv)) {
    case OutputFormat::kCsv:
      emit(inv, csv_text(as_sweep_result(report, cfg.n_mech())), out);
      break;
    case OutputFormat::kJson: {
      ojson doc = ojson::parse(report_json(report));
      doc["dark_modes"] = dark;
      emit(inv, doc.dump(2) + "\n", out);
      break;
    }
    case OutputFormat::kText: {
      std::ostringstream os;
      os << "stable: " << (report.stable ? "true" : "false") << "\n";
      os << "margin: " << num(report.margin) << "\n";
      if (report.stable) {
        os << "mode  var_X  var_Y  S_X[dB]  S_Y[dB]\n";
        for (const auto& m : report.modes) {
          os << m.mode.name() << "  " << num(m.var_x) << "  " << num(m.var_y) << "  "
             << num(m.s_x_db) << "  " << num(m.s_y_db) << "\n";
        }
      }
      os << "cooperativity:";
      for (double c : report.cooperativity) os << " " << num(c);
      os << "\n";
      os << "dark modes:";
      if (dark.empty()) os << " none";
      for (auto j : dark) os << " B" << (j + 1);
      os << "\n";
      if (report.physicality && !report.physicality->physical) {
        os << "warning: covariance fails the uncertainty check (min eigenvalue "
           << num(report.physicality->min_symplectic_eigenvalue) << ")\n";
      }
      for (const auto& a : cfg.advisories()) os << "advisory: " << a.message << "\n";
      emit(inv, os.str(), out);
      break;
    }
  }
  return report.stable ? kOk : kUnstable;
}

// ---------------------------------------------------------------- stability

int cmd_stability(const Invocation& inv, std::ostream& out) {
  const ValidatedConfig cfg = validate_config(read_config(inv));
  const DriftMatrix a = build_drift_matrix(cfg);
  const StabilityReport s = is_stable(a);
  std::optional<bool> routh;
  if (a.dim() <= kRouthHurwitzMaxDim) routh = routh_hurwitz_check(a);

  if (output_format(inv) == OutputFormat::kJson) {
    ojson doc;
    doc["stable"] = s.stable;
    doc["margin"] = s.margin;
    if (routh) doc["routh_hurwitz"] = *routh;
    ojson eig = ojson::array();
    for (const auto& l : s.eigenvalues) eig.push_back({l.real(), l.imag()});
    doc["eigenvalues"] = std::move(eig);
    emit(inv, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    os << "eigenvalues (re, im):\n";
    for (const auto& l : s.eigenvalues) os << "  " << num(l.real()) << "  " << num(l.imag()) << "\n";
    os << "margin: " << num(s.margin) << "\n";
    if (routh) os << "routh-hurwitz: " << (*routh ? "stable" : "unstable") << "\n";
    os << "stable: " << (s.stable ? "true" : "false") << "\n";
    emit(inv, os.str(), out);
  }
  return s.stable ? kOk : kUnstable;
}

// ------------------------------------------------------------ normal-modes

int cmd_normal_modes(const Invocation& inv, std::ostream& out) {
  const ValidatedConfig cfg = validate_config(read_config(inv));
  const NormalModeDecomposition d = mechanical_normal_modes(cfg);
  const auto dark = census_or_empty(d);

  if (output_format(inv) == OutputFormat::kJson) {
    ojson doc;
    ojson modes = ojson::array();
    for (Eigen::Index j = 0; j < d.frequencies.size(); ++j) {
      modes.push_back({{"mode", "B" + std::to_string(j + 1)},
                       {"frequency", d.frequencies(j)},
                       {"coupling_abs", std::abs(d.couplings(j))},
                       {"dark", d.dark[static_cast<std::size_t>(j)]}});
    }
    doc["modes"] = std::move(modes);
    doc["dark_count"] = dark.size();
    if (d.closed_form) {
      doc["closed_form"] = {{"f", d.closed_form->f},
                            {"h", d.closed_form->h},
                            {"omega_f", d.closed_form->omega_f},
                            {"max_deviation", d.closed_form->max_deviation}};
    }
    emit(inv, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    os << "mode  frequency  |G~|  dark\n";
    for (Eigen::Index j = 0; j < d.frequencies.size(); ++j) {
      os << "B" << (j + 1) << "  " << num(d.frequencies(j)) << "  " << num(std::abs(d.couplings(j)))
         << "  " << (d.dark[static_cast<std::size_t>(j)] ? "yes" : "no") << "\n";
    }
    os << "dark modes: " << dark.size() << "\n";
    if (d.closed_form) {
      os << "two-mode closed form: f=" << num(d.closed_form->f) << " h=" << num(d.closed_form->h)
         << " omega_f=" << num(d.closed_form->omega_f)
         << " (max deviation " << num(d.closed_form->max_deviation) << ")\n";
    }
    emit(inv, os.str(), out);
  }
  return kOk;
}

// -------------------------------------------------------------------- sweep

int cmd_sweep(const Invocation& inv, std::ostream& out) {
  SweepSpec spec = load_sweep_spec(inv.config_path);
  for (const auto& o : inv.overrides) apply_override(spec.base, o);
  const SweepResult r = run_sweep(spec);
  emit(inv, output_format(inv) == OutputFormat::kJson ? json_text(r) : csv_text(r), out);
  return kOk;
}

// ------------------------------------------------------------------- figure

struct Crossing {
  std::string column;
  double location;
};

/// Grid-level sign changes of every S column along a single axis,
/// interpolated linearly (geometrically on log axes).
std::vector<Crossing> grid_crossings(const SweepSpec& spec, const SweepResult& r,
                                     const std::vector<std::string>& columns) {
  std::vector<Crossing> found;
  if (spec.axes.size() != 1) return found;
  const bool log_axis = spec.axes[0].scale == GridScale::kLog;
  for (const auto& col : columns) {
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      const double y0 = row_field(r, r.rows[i - 1], col);
      const double y1 = row_field(r, r.rows[i], col);
      if (std::isnan(y0) || std::isnan(y1) || (y0 > 0) == (y1 > 0)) continue;
      double x0 = r.rows[i - 1].params[0], x1 = r.rows[i].params[0];
      const double t = y0 / (y0 - y1);
      const double x = log_axis ? std::exp(std::log(x0) + t * (std::log(x1) - std::log(x0)))
                                : x0 + t * (x1 - x0);
      found.push_back({col, x});
    }
  }
  return found;
}

std::string figure_summary(const SweepSpec& spec, const SweepResult& r) {
  std::ostringstream os;
  os << spec.name << ": " << r.rows.size() << " points";
  const auto stable = std::count_if(r.rows.begin(), r.rows.end(), [](const SweepRow& w) { return w.stable; });
  os << " (" << stable << " stable)\n";

  std::vector<std::string> columns;
  for (const auto& m : r.outputs) {
    columns.push_back("S_X_" + m.name());
    columns.push_back("S_Y_" + m.name());
  }
  for (const auto& col : columns) {
    double best = -INFINITY;
    const SweepRow* at = nullptr;
    for (const auto& row : r.rows) {
      const double v = row_field(r, row, col);
      if (!std::isnan(v) && v > best) {
        best = v;
        at = &row;
      }
    }
    if (!at) continue;
    os << "  max " << col << " = " << num(best) << " dB at";
    for (std::size_t k = 0; k < r.axis_paths.size(); ++k) os << " " << r.axis_paths[k] << "=" << num(at->params[k]);
    os << "\n";
  }
  for (const auto& c : grid_crossings(spec, r, columns)) {
    os << "  " << c.column << " crosses 0 dB near " << r.axis_paths[0] << "=" << num(c.location) << "\n";
  }
  return os.str();
}

/// Refined zero crossing of S_Y_b1 for the fig5a thermal sweeps; nullopt
/// when the panel shows no crossing.
std::optional<double> refined_crossing(const SweepSpec& spec) {
  try {
    return find_threshold(spec, "S_Y_b1", 0.0).value;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

int cmd_figure(const Invocation& inv, std::ostream& out) {
  std::vector<SweepSpec> panels = figure_preset(inv.figure);
  for (auto& p : panels) {
    for (const auto& o : inv.overrides) apply_override(p.base, o);
  }
  const bool json = output_format(inv) == OutputFormat::kJson;
  const std::string ext = json ? ".json" : ".csv";

  // One panel: --out names the file. Several: --out names a directory.
  fs::path dest = inv.out_path;
  const bool single = panels.size() == 1 && !dest.empty() && !fs::is_directory(dest);
  if (!single) {
    if (dest.empty()) dest = ".";
    fs::create_directories(dest);
  }

  std::optional<double> dmu, dmb;
  for (const auto& spec : panels) {
    const SweepResult r = run_sweep(spec);
    const fs::path file = single ? dest : dest / (spec.name + ext);
    std::ofstream f(file, std::ios::binary);
    if (!f) throw Error("cannot open '" + file.string() + "' for writing");
    f << (json ? json_text(r) : csv_text(r));
    if (!f) throw Error("failed writing '" + file.string() + "'");

    if (inv.quiet) continue;
    out << figure_summary(spec, r);
    out << "  wrote " << file.string() << "\n";
    if (spec.name == "fig5a_dmu" || spec.name == "fig5a_dmb") {
      const auto x = refined_crossing(spec);
      if (x) out << "  refined S_Y_b1 = 0 at nbar = " << num(*x) << "\n";
      (spec.name == "fig5a_dmu" ? dmu : dmb) = x;
    }
  }
  if (!inv.quiet && dmu && dmb) {
    out << "fig5a: DMB/DMU thermal threshold ratio = " << num(*dmb / *dmu) << "\n";
  }
  return kOk;
}

void add_common(CLI::App* sub, Invocation& inv, bool needs_config) {
  auto* c = sub->add_option("--config", inv.config_path, "Config file (TOML or JSON)");
  if (needs_config) c->required();
  sub->add_option("--set", inv.overrides, "Parameter override path=value (repeatable)")
      ->allow_extra_args(false);
  sub->add_option("--out", inv.out_path, "Output file (figure: directory for several panels)");
  sub->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--quiet", inv.quiet, "Suppress summaries and advisories");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  out.imbue(std::locale::classic());
  err.imbue(std::locale::classic());

  CLI::App app{"Steady-state mechanical squeezing in multimode optomechanics", "dmsq"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Invocation inv;
  auto* simulate = app.add_subcommand("simulate", "Single-point steady state and squeezing report");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep from a config with a [sweep] section");
  auto* figure = app.add_subcommand("figure", "Run a named figure preset and write CSV");
  auto* stability = app.add_subcommand("stability", "Drift-matrix eigenvalues and stability verdict");
  auto* normal = app.add_subcommand("normal-modes", "Mechanical normal modes and dark-mode census");
  for (auto* s : {simulate, sweep, stability, normal}) add_common(s, inv, true);
  add_common(figure, inv, false);
  figure->add_option("name", inv.figure, "Preset name, e.g. fig5 or fig4c")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*simulate) return cmd_simulate(inv, out);
    if (*sweep) return cmd_sweep(inv, out);
    if (*figure) return cmd_figure(inv, out);
    if (*stability) return cmd_stability(inv, out);
    return cmd_normal_modes(inv, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace dmsq::cli
