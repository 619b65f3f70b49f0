#include "dmsq/config_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>
#include <toml.hpp>

#include "dmsq/error.hpp"
#include "dmsq/parameters.hpp"

namespace dmsq {
namespace {

using json = nlohmann::json;

json toml_to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    json obj = json::object();
    for (auto&& [key, value] : *t) obj[std::string(key.str())] = toml_to_json(value);
    return obj;
  }
  if (const auto* a = node.as_array()) {
    json arr = json::array();
    for (const auto& value : *a) arr.push_back(toml_to_json(value));
    return arr;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  return nullptr;  // dates and times have no meaning here
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ConfigFormat detect(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? ConfigFormat::kJson : ConfigFormat::kToml;
  }
  return ConfigFormat::kToml;
}

json parse_document(std::string_view text, ConfigFormat format, const std::string& source) {
  if (format == ConfigFormat::kAuto) format = detect(text);
  if (format == ConfigFormat::kJson) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      const auto [line, column] = line_column(text, e.byte);
      throw ParseError(source, line, column, e.what());
    }
  }
  try {
    const toml::table table = toml::parse(text, source);
    return toml_to_json(table);
  } catch (const toml::parse_error& e) {
    throw ParseError(source, e.source().begin.line, e.source().begin.column,
                     std::string(e.description()));
  }
}

double as_real(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    try {
      return parse_real(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }
  throw ConfigError(field, "expected a number");
}

double real_field(const json& obj, const char* key, const std::string& prefix,
                  std::optional<double> fallback) {
  const std::string field = prefix.empty() ? key : prefix + "." + key;
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) throw ConfigError(field, "missing required field");
    return *fallback;
  }
  return as_real(*it, field);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(prefix.empty() ? it.key() : prefix + "." + it.key(), "unknown field");
  }
}

const json& require_object(const json& v, const std::string& field) {
  if (!v.is_object()) throw ConfigError(field, "expected a table");
  return v;
}

SystemConfig decode_system(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, {"unit", "cavity", "mechanical", "hopping", "sweep"}, "");

  SystemConfig cfg;
  if (const auto it = doc.find("unit"); it != doc.end()) {
    if (!it->is_string()) throw ConfigError("unit", "expected a string");
    cfg.unit = it->get<std::string>();
  }

  if (const auto it = doc.find("cavity"); it != doc.end()) {
    const json& cav = require_object(*it, "cavity");
    reject_unknown(cav, {"kappa", "opa_gain", "opa_phase"}, "cavity");
    cfg.kappa = real_field(cav, "kappa", "cavity", 1.0);
    cfg.opa_gain = real_field(cav, "opa_gain", "cavity", 0.0);
    cfg.opa_phase = real_field(cav, "opa_phase", "cavity", 0.0);
  }

  const auto mech = doc.find("mechanical");
  if (mech == doc.end() || !mech->is_array() || mech->empty()) {
    throw ConfigError("mechanical", "at least one [[mechanical]] entry is required");
  }
  cfg.n_mech = mech->size();
  for (std::size_t l = 0; l < cfg.n_mech; ++l) {
    const std::string prefix = "mechanical[" + std::to_string(l) + "]";
    const json& m = require_object((*mech)[l], prefix);
    reject_unknown(m, {"omega", "gamma", "coupling", "nbar"}, prefix);
    cfg.omega.push_back(real_field(m, "omega", prefix, std::nullopt));
    cfg.gamma.push_back(real_field(m, "gamma", prefix, std::nullopt));
    cfg.coupling.push_back(real_field(m, "coupling", prefix, 0.0));
    cfg.nbar.push_back(real_field(m, "nbar", prefix, 0.0));
  }

  const std::size_t links = cfg.n_mech - 1;
  const auto hop = doc.find("hopping");
  if (hop == doc.end()) {
    cfg.hop_strength.assign(links, 0.0);
    cfg.hop_phase.assign(links, 0.0);
  } else {
    if (!hop->is_array()) throw ConfigError("hopping", "expected an array of tables");
    if (hop->size() != links) {
      throw ConfigError("hopping", "a linear chain of " + std::to_string(cfg.n_mech) +
                                       " modes has " + std::to_string(links) + " links, got " +
                                       std::to_string(hop->size()));
    }
    for (std::size_t l = 0; l < links; ++l) {
      const std::string prefix = "hopping[" + std::to_string(l) + "]";
      const json& h = require_object((*hop)[l], prefix);
      reject_unknown(h, {"strength", "phase", "sites"}, prefix);
      if (const auto s = h.find("sites"); s != h.end()) {
        const bool chain = s->is_array() && s->size() == 2 && (*s)[0].is_number_integer() &&
                           (*s)[1].is_number_integer() && (*s)[0].get<long long>() == static_cast<long long>(l) &&
                           (*s)[1].get<long long>() == static_cast<long long>(l + 1);
        if (!chain) {
          throw ConfigError(prefix + ".sites", "only nearest-neighbour chain links [" +
                                                   std::to_string(l) + ", " + std::to_string(l + 1) +
                                                   "] are supported");
        }
      }
      cfg.hop_strength.push_back(real_field(h, "strength", prefix, 0.0));
      cfg.hop_phase.push_back(real_field(h, "phase", prefix, 0.0));
    }
  }
  return cfg;
}

Axis decode_axis(const json& a, const std::string& prefix) {
  require_object(a, prefix);
  reject_unknown(a, {"path", "grid", "values"}, prefix);
  const auto p = a.find("path");
  if (p == a.end() || !p->is_string()) throw ConfigError(prefix + ".path", "missing parameter path");
  const std::string path = p->get<std::string>();
  if (!is_parameter_path(path)) throw ConfigError(prefix + ".path", "unknown parameter path '" + path + "'");

  const auto values = a.find("values");
  const auto grid = a.find("grid");
  if ((values == a.end()) == (grid == a.end())) {
    throw ConfigError(prefix, "exactly one of `grid` or `values` is required");
  }
  if (values != a.end()) {
    if (!values->is_array()) throw ConfigError(prefix + ".values", "expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < values->size(); ++i) {
      v.push_back(as_real((*values)[i], prefix + ".values[" + std::to_string(i) + "]"));
    }
    return Axis::explicit_values(path, std::move(v));
  }
  const std::string gp = prefix + ".grid";
  const json& g = require_object(*grid, gp);
  reject_unknown(g, {"start", "stop", "count", "scale"}, gp);
  const double start = real_field(g, "start", gp, std::nullopt);
  const double stop = real_field(g, "stop", gp, std::nullopt);
  const auto count = g.find("count");
  if (count == g.end() || !count->is_number_integer() || count->get<long long>() < 1) {
    throw ConfigError(gp + ".count", "expected a positive integer");
  }
  const auto n = static_cast<std::size_t>(count->get<long long>());
  std::string scale = "linear";
  if (const auto s = g.find("scale"); s != g.end()) {
    if (!s->is_string()) throw ConfigError(gp + ".scale", "expected \"linear\" or \"log\"");
    scale = s->get<std::string>();
  }
  if (scale == "linear") return Axis::linear(path, start, stop, n);
  if (scale == "log") {
    if (!(start > 0.0 && stop > 0.0)) throw ConfigError(gp, "log grid needs positive bounds");
    return Axis::logarithmic(path, start, stop, n);
  }
  throw ConfigError(gp + ".scale", "expected \"linear\" or \"log\"");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ConfigFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") return ConfigFormat::kJson;
  if (ext == ".toml") return ConfigFormat::kToml;
  return ConfigFormat::kAuto;
}

SystemConfig parse_config(std::string_view text, ConfigFormat format, const std::string& source) {
  return decode_system(parse_document(text, format, source));
}

SystemConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), format_from_path(path), path.string());
}

SweepSpec parse_sweep_spec(std::string_view text, ConfigFormat format, const std::string& source) {
  const json doc = parse_document(text, format, source);
  SweepSpec spec;
  spec.base = decode_system(doc);
  const auto sw = doc.find("sweep");
  if (sw == doc.end()) throw ConfigError("sweep", "missing [sweep] section");
  const json& s = require_object(*sw, "sweep");
  reject_unknown(s, {"name", "outputs", "axes"}, "sweep");
  spec.name = "sweep";
  if (const auto n = s.find("name"); n != s.end()) {
    if (!n->is_string()) throw ConfigError("sweep.name", "expected a string");
    spec.name = n->get<std::string>();
  }
  if (const auto o = s.find("outputs"); o != s.end()) {
    if (!o->is_array()) throw ConfigError("sweep.outputs", "expected an array of mode names");
    for (std::size_t i = 0; i < o->size(); ++i) {
      const std::string field = "sweep.outputs[" + std::to_string(i) + "]";
      if (!(*o)[i].is_string()) throw ConfigError(field, "expected a mode name");
      try {
        spec.outputs.push_back(ModeId::parse((*o)[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
      }
    }
  } else {
    for (std::size_t l = 0; l < spec.base.n_mech; ++l) spec.outputs.push_back(ModeId::mechanical(l));
    spec.outputs.push_back(ModeId::optical());
  }
  const auto axes = s.find("axes");
  if (axes == s.end() || !axes->is_array()) throw ConfigError("sweep.axes", "expected [[sweep.axes]] entries");
  for (std::size_t i = 0; i < axes->size(); ++i) {
    spec.axes.push_back(decode_axis((*axes)[i], "sweep.axes[" + std::to_string(i) + "]"));
  }
  validate_sweep_spec(spec);
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return parse_sweep_spec(read_file(path), format_from_path(path), path.string());
}

}  // namespace dmsq
