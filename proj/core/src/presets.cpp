#include <numbers>
#include <stdexcept>
#include <string>

#include "dmsq/sweep.hpp"

namespace dmsq {
namespace {

constexpr double kPi = std::numbers::pi;

// Shared by every preset: omega_l/kappa = 10,
// gamma_l/kappa = 1e-5.
constexpr double kOmega = 10.0;
constexpr double kGamma = 1e-5;

// Grid resolution.
constexpr std::size_t kGainPoints = 50;    // Lambda/kappa in [0, 0.49]
constexpr std::size_t kPhasePoints = 101;  // phases in [0, 2 pi]
constexpr std::size_t kHopPoints = 51;     // eta/kappa in [0, 0.5]
constexpr std::size_t kNbarPoints = 71;    // nbar in [1e-3, 1e4], log
constexpr std::size_t kCoopPoints = 41;    // C in [1, 1e4], log
constexpr double kMaxGain = 0.49;
constexpr double kMaxHop = 0.5;

std::vector<ModeId> all_modes(std::size_t n) {
  std::vector<ModeId> out;
  for (std::size_t l = 0; l < n; ++l) out.push_back(ModeId::mechanical(l));
  out.push_back(ModeId::optical());
  return out;
}

SweepSpec make(std::string name, SystemConfig base, std::vector<Axis> axes) {
  SweepSpec s;
  s.name = std::move(name);
  s.outputs = all_modes(base.n_mech);
  s.base = std::move(base);
  s.axes = std::move(axes);
  return s;
}

// fig2: G = 0, nbar = 0, eta = 0, theta = 0.
SystemConfig fig2_base() { return SystemConfig::uniform(2, 1.0, kOmega, kGamma, 0.0, 0.0, 0.0, 0.0, 0.45, kPi); }
// fig3: as fig2 with G/kappa = 0.1.
SystemConfig fig3_base() { return SystemConfig::uniform(2, 1.0, kOmega, kGamma, 0.1, 0.0, 0.0, 0.0, 0.45, kPi); }
// fig4: nbar = 10, Lambda/kappa = 0.45, phi = pi, G/kappa = 0.1.
SystemConfig fig4_base() { return SystemConfig::uniform(2, 1.0, kOmega, kGamma, 0.1, 10.0, 0.1, kPi / 2, 0.45, kPi); }
// fig5: Lambda/kappa = 0.45, phi = pi; DMB eta/kappa = 0.1, theta = pi/2.
SystemConfig fig5_base(bool broken, double coupling, double nbar) {
  return SystemConfig::uniform(2, 1.0, kOmega, kGamma, coupling, nbar, broken ? 0.1 : 0.0,
                               broken ? kPi / 2 : 0.0, 0.45, kPi);
}
// fig6: N = 4, G_l/kappa = 0.1, nbar_l = 10.
SystemConfig fig6_base(bool broken) {
  return SystemConfig::uniform(4, 1.0, kOmega, kGamma, 0.1, 10.0, broken ? 0.1 : 0.0,
                               broken ? kPi / 2 : 0.0, 0.45, kPi);
}

const std::vector<double> kGainSamples{0.1, 0.2, 0.3, 0.4, 0.45};

std::vector<SweepSpec> panel(std::string_view name) {
  const auto gain = [] { return Axis::linear("opa_gain", 0.0, kMaxGain, kGainPoints); };
  const auto phase = [](const char* path) { return Axis::linear(path, 0.0, 2 * kPi, kPhasePoints); };

  if (name == "fig2a") return {make("fig2a", fig2_base(), {gain()})};
  if (name == "fig2b") {
    return {make("fig2b", fig2_base(), {Axis::explicit_values("opa_gain", kGainSamples), phase("opa_phase")})};
  }
  if (name == "fig3a" || name == "fig3b") {
    return {make(std::string(name), fig3_base(), {gain(), phase("opa_phase")})};
  }
  if (name == "fig3c") return {make("fig3c", fig3_base(), {gain()})};
  if (name == "fig3d") {
    return {make("fig3d", fig3_base(), {Axis::explicit_values("opa_gain", kGainSamples), phase("opa_phase")})};
  }
  if (name == "fig4a" || name == "fig4b") {
    return {make(std::string(name), fig4_base(),
                 {Axis::linear("hopping[0].strength", 0.0, kMaxHop, kHopPoints), phase("hopping[0].phase")})};
  }
  if (name == "fig4c") return {make("fig4c", fig4_base(), {phase("hopping[0].phase")})};
  if (name == "fig4d") {
    return {make("fig4d", fig4_base(), {Axis::linear("hopping[0].strength", 0.0, kMaxHop, kHopPoints)})};
  }
  if (name == "fig5a") {
    const auto nbar = [] { return Axis::logarithmic("mechanical[*].nbar", 1e-3, 1e4, kNbarPoints); };
    return {make("fig5a_dmu", fig5_base(false, 0.1, 10.0), {nbar()}),
            make("fig5a_dmb", fig5_base(true, 0.1, 10.0), {nbar()})};
  }
  if (name == "fig5b") {
    const auto coop = [] { return Axis::logarithmic("cooperativity", 1.0, 1e4, kCoopPoints); };
    return {make("fig5b_dmu", fig5_base(false, 0.1, 10.0), {coop()}),
            make("fig5b_dmb", fig5_base(true, 0.1, 10.0), {coop()})};
  }
  if (name == "fig6a") {
    return {make("fig6a", fig6_base(true), {Axis::linear("hopping[*].strength", 0.0, kMaxHop, kHopPoints)})};
  }
  if (name == "fig6b") return {make("fig6b", fig6_base(true), {phase("hopping[0].phase")})};
  if (name == "fig6c") {
    return {make("fig6c_dmu", fig6_base(false), {gain()}), make("fig6c_dmb", fig6_base(true), {gain()})};
  }
  if (name == "fig6d") {
    return {make("fig6d_dmu", fig6_base(false), {phase("opa_phase")}),
            make("fig6d_dmb", fig6_base(true), {phase("opa_phase")})};
  }
  return {};
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& figures() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> table{
      {"fig2", {"fig2a", "fig2b"}},
      {"fig3", {"fig3a", "fig3c", "fig3d"}},
      {"fig4", {"fig4a", "fig4c", "fig4d"}},
      {"fig5", {"fig5a", "fig5b"}},
      {"fig6", {"fig6a", "fig6b", "fig6c", "fig6d"}},
  };
  return table;
}

}  // namespace

std::vector<SweepSpec> figure_preset(std::string_view name) {
  for (const auto& [fig, panels] : figures()) {
    if (name == fig) {
      std::vector<SweepSpec> out;
      for (const auto& p : panels) {
        auto specs = panel(p);
        out.insert(out.end(), specs.begin(), specs.end());
      }
      return out;
    }
  }
  auto specs = panel(name);
  if (specs.empty()) throw std::invalid_argument("unknown figure preset '" + std::string(name) + "'");
  return specs;
}

std::vector<std::string> figure_names() {
  return {"fig2", "fig2a", "fig2b", "fig3", "fig3a", "fig3b", "fig3c", "fig3d", "fig4", "fig4a",
          "fig4b", "fig4c", "fig4d", "fig5", "fig5a", "fig5b", "fig6", "fig6a", "fig6b", "fig6c", "fig6d"};
}

}  // namespace dmsq
