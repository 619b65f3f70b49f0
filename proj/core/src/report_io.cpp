#include "dmsq/report_io.hpp"

#include <charconv>
#include <cmath>

#include <nlohmann/json.hpp>

#include "dmsq/format.hpp"

namespace dmsq {

std::string format_real(double x, int significant_digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significant_digits);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

SweepResult as_sweep_result(const SqueezingReport& report, std::size_t n_mech) {
  SweepResult r;
  r.name = "simulate";
  for (std::size_t l = 0; l < n_mech; ++l) r.outputs.push_back(ModeId::mechanical(l));
  r.outputs.push_back(ModeId::optical());
  SweepRow row;
  row.stable = report.stable;
  row.margin = report.margin;
  row.modes = report.modes;
  r.rows.push_back(std::move(row));
  r.metadata.tool_version = tool_version();
  return r;
}

std::string report_json(const SqueezingReport& report) {
  nlohmann::ordered_json doc;
  doc["stable"] = report.stable;
  doc["margin"] = report.margin;
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  for (const auto& m : report.modes) {
    nlohmann::ordered_json o;
    o["mode"] = m.mode.name();
    o["var_X"] = m.var_x;
    o["var_Y"] = m.var_y;
    o["S_X"] = m.s_x_db;
    o["S_Y"] = m.s_y_db;
    modes.push_back(std::move(o));
  }
  doc["modes"] = std::move(modes);
  doc["cooperativity"] = report.cooperativity;
  if (report.physicality) {
    const auto& p = *report.physicality;
    doc["physicality"] = {
        {"physical", p.physical},
        {"min_symplectic_eigenvalue", p.min_symplectic_eigenvalue},
        {"worst_robertson_schrodinger_margin", p.worst_robertson_schrodinger_margin},
        {"worst_heisenberg_margin", p.worst_heisenberg_margin},
    };
  }
  return doc.dump(2);
}

}  // namespace dmsq
