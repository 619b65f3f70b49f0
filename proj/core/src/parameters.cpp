#include "dmsq/parameters.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "dmsq/error.hpp"

namespace dmsq {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> plain_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

enum class Target { kKappa, kOpaGain, kOpaPhase, kCooperativity, kMechanical, kHopping };

struct ParsedPath {
  Target target;
  bool all = false;
  std::size_t index = 0;
  std::string field;
};

std::optional<ParsedPath> parse_path(std::string_view path) {
  path = trim(path);
  if (path.starts_with("cavity.")) {
    const auto rest = path.substr(7);
    if (rest == "kappa") return ParsedPath{Target::kKappa};
    if (rest == "opa_gain") return ParsedPath{Target::kOpaGain};
    if (rest == "opa_phase") return ParsedPath{Target::kOpaPhase};
    return std::nullopt;
  }
  if (path == "kappa") return ParsedPath{Target::kKappa};
  if (path == "opa_gain") return ParsedPath{Target::kOpaGain};
  if (path == "opa_phase") return ParsedPath{Target::kOpaPhase};
  if (path == "cooperativity") return ParsedPath{Target::kCooperativity};

  ParsedPath p;
  std::string_view rest;
  if (path.starts_with("mechanical[")) {
    p.target = Target::kMechanical;
    rest = path.substr(11);
  } else if (path.starts_with("hopping[")) {
    p.target = Target::kHopping;
    rest = path.substr(8);
  } else {
    return std::nullopt;
  }
  const auto close = rest.find(']');
  if (close == std::string_view::npos) return std::nullopt;
  const auto idx = rest.substr(0, close);
  if (idx == "*") {
    p.all = true;
  } else {
    const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), p.index);
    if (ec != std::errc() || ptr != idx.data() + idx.size()) return std::nullopt;
  }
  rest = rest.substr(close + 1);
  if (!rest.starts_with(".")) return std::nullopt;
  p.field = std::string(rest.substr(1));
  if (p.target == Target::kMechanical) {
    if (p.field != "omega" && p.field != "gamma" && p.field != "coupling" && p.field != "nbar") {
      return std::nullopt;
    }
  } else if (p.field != "strength" && p.field != "phase") {
    return std::nullopt;
  }
  return p;
}

std::vector<double>& list_for(SystemConfig& cfg, const ParsedPath& p) {
  if (p.target == Target::kMechanical) {
    if (p.field == "omega") return cfg.omega;
    if (p.field == "gamma") return cfg.gamma;
    if (p.field == "coupling") return cfg.coupling;
    return cfg.nbar;
  }
  return p.field == "strength" ? cfg.hop_strength : cfg.hop_phase;
}

ParsedPath require_path(std::string_view path) {
  auto p = parse_path(path);
  if (!p) throw ConfigError(std::string(path), "unknown parameter path");
  return *p;
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto x = plain_number(s)) return *x;

  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  std::string_view head = trim(s.substr(0, pos));
  std::string_view tail = trim(s.substr(pos + 2));
  if (head.ends_with('*')) head = trim(head.substr(0, head.size() - 1));
  double factor = 1.0;
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty() && head != "+") {
    auto f = plain_number(head);
    if (!f) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    factor = *f;
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    auto d = plain_number(trim(tail.substr(1)));
    if (!d || *d == 0.0) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    divisor = *d;
  }
  return factor * std::numbers::pi / divisor;
}

bool is_parameter_path(std::string_view path) { return parse_path(path).has_value(); }

void set_parameter(SystemConfig& cfg, std::string_view path, double value) {
  const ParsedPath p = require_path(path);
  switch (p.target) {
    case Target::kKappa: cfg.kappa = value; return;
    case Target::kOpaGain: cfg.opa_gain = value; return;
    case Target::kOpaPhase: cfg.opa_phase = value; return;
    case Target::kCooperativity: {
      if (value < 0.0) throw ConfigError("cooperativity", "must be nonnegative");
      if (cfg.gamma.size() != cfg.n_mech) throw ConfigError("gamma", "size does not match n_mech");
      cfg.coupling.resize(cfg.n_mech);
      for (std::size_t l = 0; l < cfg.n_mech; ++l) {
        cfg.coupling[l] = std::sqrt(value * cfg.kappa * cfg.gamma[l]);
      }
      return;
    }
    case Target::kMechanical:
    case Target::kHopping: {
      auto& list = list_for(cfg, p);
      if (p.all) {
        for (double& x : list) x = value;
        return;
      }
      if (p.index >= list.size()) {
        throw ConfigError(std::string(path), "index out of range (" + std::to_string(list.size()) +
                                                 " entries)");
      }
      list[p.index] = value;
      return;
    }
  }
}

double get_parameter(const SystemConfig& cfg, std::string_view path) {
  const ParsedPath p = require_path(path);
  switch (p.target) {
    case Target::kKappa: return cfg.kappa;
    case Target::kOpaGain: return cfg.opa_gain;
    case Target::kOpaPhase: return cfg.opa_phase;
    case Target::kCooperativity:
      if (cfg.n_mech == 0 || cfg.coupling.empty() || cfg.gamma.empty()) {
        throw ConfigError("cooperativity", "no mechanical modes");
      }
      return cfg.coupling[0] * cfg.coupling[0] / (cfg.kappa * cfg.gamma[0]);
    case Target::kMechanical:
    case Target::kHopping: {
      const auto& list = list_for(const_cast<SystemConfig&>(cfg), p);
      const std::size_t i = p.all ? 0 : p.index;
      if (i >= list.size()) throw ConfigError(std::string(path), "index out of range");
      return list[i];
    }
  }
  return 0.0;
}

void apply_override(SystemConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(assignment), "override must have the form path=value");
  }
  const std::string path(trim(assignment.substr(0, eq)));
  double value = 0.0;
  try {
    value = parse_real(assignment.substr(eq + 1));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  set_parameter(cfg, path, value);
}

}  // namespace dmsq
