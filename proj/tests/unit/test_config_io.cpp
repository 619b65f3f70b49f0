#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dmsq/config_io.hpp"
#include "dmsq/error.hpp"
#include "dmsq/parameters.hpp"

using namespace dmsq;

namespace {

constexpr const char* kTwoModeToml = R"(
unit = "kappa"

[cavity]
kappa = 1.0
opa_gain = 0.45
opa_phase = "pi"

[[mechanical]]
omega = 10.0
gamma = 1e-5
coupling = 0.1
nbar = 10

[[mechanical]]
omega = 10.0
gamma = 1e-5
coupling = 0.1
nbar = 10

[[hopping]]
strength = 0.1
phase = "pi/2"
)";

constexpr const char* kTwoModeJson = R"({
  "unit": "kappa",
  "cavity": {"kappa": 1.0, "opa_gain": 0.45, "opa_phase": "pi"},
  "mechanical": [
    {"omega": 10.0, "gamma": 1e-5, "coupling": 0.1, "nbar": 10},
    {"omega": 10.0, "gamma": 1e-5, "coupling": 0.1, "nbar": 10}
  ],
  "hopping": [{"strength": 0.1, "phase": "pi/2"}]
})";

}  // namespace

TEST_CASE("parse_real understands multiples of pi") {
  const double pi = std::numbers::pi;
  CHECK(parse_real("pi") == pi);
  CHECK(parse_real("-pi/4") == -pi / 4);
  CHECK(parse_real("3pi/2") == doctest::Approx(1.5 * pi));
  CHECK(parse_real("0.5*pi") == doctest::Approx(0.5 * pi));
  CHECK(parse_real("2*pi") == doctest::Approx(2 * pi));
  CHECK(parse_real(" 1e-5 ") == 1e-5);
  CHECK(parse_real("-0.25") == -0.25);
  CHECK_THROWS_AS(parse_real("1,5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real("pie"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real(""), std::invalid_argument);
}

TEST_CASE("TOML and JSON forms decode to the same config") {
  const SystemConfig t = parse_config(kTwoModeToml);
  const SystemConfig j = parse_config(kTwoModeJson);
  CHECK(t.n_mech == 2);
  CHECK(t.opa_phase == std::numbers::pi);
  CHECK(t.hop_phase[0] == std::numbers::pi / 2);
  CHECK(t.omega == j.omega);
  CHECK(t.gamma == j.gamma);
  CHECK(t.coupling == j.coupling);
  CHECK(t.nbar == j.nbar);
  CHECK(t.hop_strength == j.hop_strength);
  CHECK(t.hop_phase == j.hop_phase);
  CHECK(t.opa_gain == j.opa_gain);
  CHECK(t.unit == "kappa");
}

TEST_CASE("missing hopping section means uncoupled mechanics") {
  const SystemConfig c = parse_config(R"(
[[mechanical]]
omega = 10
gamma = 0.01
[[mechanical]]
omega = 10
gamma = 0.01
)");
  CHECK(c.kappa == 1.0);
  CHECK(c.hop_strength == std::vector<double>{0.0});
  CHECK(c.coupling == std::vector<double>{0.0, 0.0});
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_config("[cavity]\nkappa = 1.0\nopa_gain = = 2\n", ConfigFormat::kToml, "bad.toml");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
  try {
    parse_config("{\n  \"cavity\": {\"kappa\": 1.0,,}\n}", ConfigFormat::kJson, "bad.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("semantic errors name the field") {
  auto field_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of("[[mechanical]]\nomega = 10\n") == "mechanical[0].gamma");
  CHECK(field_of("[[mechanical]]\nomega = 10\ngamma = 0.1\ncolour = 3\n") == "mechanical[0].colour");
  CHECK(field_of("[[mechanical]]\nomega = \"ten\"\ngamma = 0.1\n") == "mechanical[0].omega");
  CHECK(field_of("[[mechanical]]\nomega = 1\ngamma = 0.1\n[[mechanical]]\nomega = 1\ngamma = 0.1\n"
                 "[[hopping]]\nstrength = 0.1\n[[hopping]]\nstrength = 0.1\n") == "hopping");
  // Only nearest-neighbour links exist.
  CHECK(field_of("[[mechanical]]\nomega = 1\ngamma = 0.1\n[[mechanical]]\nomega = 1\ngamma = 0.1\n"
                 "[[hopping]]\nsites = [0, 2]\nstrength = 0.1\n") == "hopping[0].sites");
}

TEST_CASE("parameter paths") {
  SystemConfig c = parse_config(kTwoModeToml);
  set_parameter(c, "opa_gain", 0.3);
  CHECK(c.opa_gain == 0.3);
  set_parameter(c, "cavity.kappa", 2.0);
  CHECK(c.kappa == 2.0);
  set_parameter(c, "mechanical[1].nbar", 3.0);
  CHECK(c.nbar == std::vector<double>{10.0, 3.0});
  set_parameter(c, "mechanical[*].gamma", 2e-5);
  CHECK(c.gamma == std::vector<double>{2e-5, 2e-5});
  set_parameter(c, "hopping[0].phase", 1.0);
  CHECK(get_parameter(c, "hopping[0].phase") == 1.0);
  set_parameter(c, "cooperativity", 1000.0);
  CHECK(c.coupling[0] == doctest::Approx(std::sqrt(1000.0 * 2.0 * 2e-5)));
  CHECK(get_parameter(c, "cooperativity") == doctest::Approx(1000.0));

  CHECK_THROWS_AS(set_parameter(c, "mechanical[2].nbar", 1.0), ConfigError);
  CHECK_THROWS_AS(set_parameter(c, "mechanical[0].mass", 1.0), ConfigError);
  CHECK_THROWS_AS(set_parameter(c, "bogus", 1.0), ConfigError);
  CHECK(is_parameter_path("hopping[*].strength"));
  CHECK_FALSE(is_parameter_path("hopping[x].strength"));

  apply_override(c, "hopping[0].phase=pi/2");
  CHECK(c.hop_phase[0] == std::numbers::pi / 2);
  CHECK_THROWS_AS(apply_override(c, "opa_gain"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "opa_gain=abc"), ConfigError);
}

TEST_CASE("sweep spec section") {
  const std::string text = std::string(kTwoModeToml) + R"(
[sweep]
name = "theta"
outputs = ["b1", "b2"]

[[sweep.axes]]
path = "hopping[0].phase"
grid = { start = 0.0, stop = "2pi", count = 5, scale = "linear" }

[[sweep.axes]]
path = "mechanical[*].nbar"
values = [1, 10, 100]
)";
  const SweepSpec s = parse_sweep_spec(text);
  CHECK(s.name == "theta");
  REQUIRE(s.axes.size() == 2);
  CHECK(s.axes[0].values.size() == 5);
  CHECK(s.axes[0].values.back() == doctest::Approx(2 * std::numbers::pi));
  CHECK(s.axes[1].values == std::vector<double>{1, 10, 100});
  CHECK(s.outputs.size() == 2);

  const std::string log_axis = std::string(kTwoModeToml) + R"(
[sweep]
[[sweep.axes]]
path = "mechanical[*].nbar"
grid = { start = 1e-3, stop = 1e4, count = 8, scale = "log" }
)";
  const SweepSpec l = parse_sweep_spec(log_axis);
  CHECK(l.axes[0].scale == GridScale::kLog);
  CHECK(l.axes[0].values[3] == doctest::Approx(1.0));
  CHECK(l.outputs.size() == 3);  // default: every mode

  CHECK_THROWS_AS(parse_sweep_spec(kTwoModeToml), ConfigError);
  CHECK_THROWS_AS(parse_sweep_spec(std::string(kTwoModeToml) + "[sweep]\nname = \"x\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_spec(std::string(kTwoModeToml) +
                                   "[sweep]\n[[sweep.axes]]\npath = \"nope\"\nvalues = [1]\n"),
                  ConfigError);
}

TEST_CASE("shipped example configs load") {
  const std::string root = DMSQ_SOURCE_DIR;
  for (const char* name : {"fig4_dmb.toml", "opa_only.toml", "passive.toml", "chain4.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_config(root + "/configs/" + name));
  }
  CHECK_NOTHROW(load_sweep_spec(root + "/configs/theta_sweep.toml"));
  CHECK_THROWS_AS(load_config(root + "/configs/does_not_exist.toml"), Error);
}
