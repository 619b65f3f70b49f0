// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dmsq/analysis.hpp"
#include "dmsq/model.hpp"
#include "dmsq/steady_state.hpp"
#include "dmsq/sweep.hpp"
#include "oracles/oracles.hpp"

using namespace dmsq;
using oracle::kPi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

SystemConfig two_mode(double eta, double theta, double nbar = 10.0, double gain = 0.45) {
  return SystemConfig::uniform(2, 1.0, 10.0, 1e-5, 0.1, nbar, eta, theta, gain, kPi);
}

SystemConfig chain(double eta, double theta, double gain = 0.45) {
  return SystemConfig::uniform(4, 1.0, 10.0, 1e-5, 0.1, 10.0, eta, theta, gain, kPi);
}

// Covariances shared between the cross-solver and physicality criteria.
std::vector<CovarianceMatrix>& random_covariances() {
  static std::vector<CovarianceMatrix> store;
  return store;
}

Outcome opa_only() {
  Outcome o;
  double worst = 0.0;
  for (double gain : {0.1, 0.2, 0.3, 0.4, 0.45}) {
    const auto r = analyze(validate_config(SystemConfig::uniform(2, 1.0, 10.0, 1e-5, 0.0, 0.0, 0.0, 0.0, gain, kPi)));
    if (!r.stable) return {false, fmt("unstable at gain %.2f", gain)};
    worst = std::max(worst, std::abs(r.find(ModeId::optical())->s_x_db - oracle::opa_squeezing_db(1.0, gain)));
  }
  const double at45 =
      analyze(validate_config(SystemConfig::uniform(2, 1.0, 10.0, 1e-5, 0.0, 0.0, 0.0, 0.0, 0.45, kPi)))
          .find(ModeId::optical())
          ->s_x_db;
  o.pass = worst < 1e-9 && std::abs(at45 - 2.7875) < 5e-5;
  o.detail = fmt("max |S - 10 log10(1 + 2 gain)| = %.2e dB, S(0.45) = %.6f dB", worst, at45);
  return o;
}

Outcome dark_mode_switch() {
  const auto r = run_sweep(figure_preset("fig4c").front());
  const auto s = [&](std::size_t i, const char* f) { return row_field(r, r.rows[i], f); };
  bool pass = r.rows.size() == 101;
  for (std::size_t i : {0u, 50u, 100u}) pass = pass && s(i, "S_Y_b1") <= 0.0 && s(i, "S_Y_b2") <= 0.0;
  pass = pass && s(25, "S_Y_b1") > 0.0 && s(25, "S_Y_b2") > 0.0;
  std::size_t arg_first = 0, arg_second = 50;
  for (std::size_t i = 0; i <= 50; ++i) {
    if (s(i, "S_Y_b1") > s(arg_first, "S_Y_b1")) arg_first = i;
  }
  for (std::size_t i = 50; i <= 100; ++i) {
    if (s(i, "S_Y_b1") > s(arg_second, "S_Y_b1")) arg_second = i;
  }
  const double step = 2 * kPi / 100;
  const double off1 = std::abs(r.rows[arg_first].params[0] - kPi / 2);
  const double off2 = std::abs(r.rows[arg_second].params[0] - 3 * kPi / 2);
  pass = pass && off1 <= step + 1e-12 && off2 <= step + 1e-12;
  return {pass, fmt("S_Y_b1: %.3f dB at 0, %.3f dB at pi/2, %.3f dB at pi", s(0, "S_Y_b1"), s(25, "S_Y_b1"),
                    s(50, "S_Y_b1")) +
                    fmt("; argmax offsets %.3g, %.3g rad", off1, off2)};
}

Outcome thermal_thresholds() {
  const auto panels = figure_preset("fig5a");
  const double dmu = find_threshold(panels[0], "S_Y_b1", 0.0).value;
  const double dmb = find_threshold(panels[1], "S_Y_b1", 0.0).value;
  const double ratio = dmb / dmu;
  const bool ranges = dmu >= 0.03 && dmu <= 0.3 && dmb >= 30 && dmb <= 300 && ratio >= 300 && ratio <= 3000;
  const bool regression = std::abs(dmu / oracle::frozen::kThermalThresholdDmu - 1) < 1e-4 &&
                          std::abs(dmb / oracle::frozen::kThermalThresholdDmb - 1) < 1e-4;
  return {ranges && regression, fmt("nbar*_DMU = %.6g, nbar*_DMB = %.6g, ratio = %.1f", dmu, dmb, ratio)};
}

Outcome cooperativity_behaviour() {
  const double c = cooperativity(validate_config(two_mode(0.1, kPi / 2)), 0);
  const auto panels = figure_preset("fig5b");
  const auto dmu = run_sweep(panels[0]);
  const auto dmb = run_sweep(panels[1]);
  double dmu_max = -INFINITY;
  for (const auto& row : dmu.rows) {
    dmu_max = std::max(dmu_max, row.stable ? row_field(dmu, row, "S_Y_b1") : INFINITY);
    dmu_max = std::max(dmu_max, row.stable ? row_field(dmu, row, "S_Y_b2") : INFINITY);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < dmb.rows.size(); ++i) {
    for (const char* f : {"S_Y_b1", "S_Y_b2"}) {
      const double prev = row_field(dmb, dmb.rows[i - 1], f);
      const double cur = row_field(dmb, dmb.rows[i], f);
      increasing = increasing && cur > prev;
    }
  }
  const bool exact = std::abs(c - 1000.0) <= 1e-12 * 1000.0;
  return {exact && dmu_max <= 0.0 && increasing,
          fmt("C = %.15g, max DMU S_Y = %.3f dB, DMB S_Y_b1 at C = 1e4: %.3f dB", c, dmu_max,
              row_field(dmb, dmb.rows.back(), "S_Y_b1"))};
}

Outcome four_mode_chain() {
  const auto broken = analyze(validate_config(chain(0.1, kPi / 2)));
  const auto unbroken = analyze(validate_config(chain(0.0, 0.0)));
  const auto no_opa = analyze(validate_config(chain(0.1, kPi / 2, 0.0)));
  bool pass = broken.stable && unbroken.stable && no_opa.stable;
  double min_broken = INFINITY, max_other = -INFINITY;
  for (std::size_t l = 0; pass && l < 4; ++l) {
    const auto m = ModeId::mechanical(l);
    min_broken = std::min(min_broken, broken.find(m)->s_y_db);
    max_other = std::max({max_other, unbroken.find(m)->s_y_db, no_opa.find(m)->s_y_db});
    pass = pass && std::abs(broken.find(m)->s_y_db - oracle::frozen::kChainDmbSy[l]) < 1e-8;
  }
  const auto dark_eta0 = dark_mode_census(mechanical_normal_modes(validate_config(chain(0.0, 0.0)))).size();
  const auto dark_dmb = dark_mode_census(mechanical_normal_modes(validate_config(chain(0.1, kPi / 2)))).size();
  pass = pass && min_broken > 0.0 && max_other <= 0.0 && dark_eta0 == 3 && dark_dmb == 0;
  return {pass, fmt("min S_Y (DMB) = %.3f dB, max S_Y (DMU or no OPA) = %.3f dB", min_broken, max_other) +
                    ", dark modes " + std::to_string(dark_eta0) + " -> " + std::to_string(dark_dmb)};
}

Outcome cross_solver() {
  std::mt19937_64 rng(20260601);
  auto& store = random_covariances();
  store.clear();
  double worst_diff = 0.0, worst_residual = 0.0;
  std::size_t accepted = 0;
  while (accepted < 100) {
    const std::size_t n = 1 + accepted % 4;
    const auto cfg = validate_config(oracle::random_config(rng, n));
    const auto a = build_drift_matrix(cfg);
    if (is_stable(a).margin > -1e-3) continue;  // keeps the ODE integration short
    const auto q = build_noise_matrix(cfg);
    const auto v = solve_lyapunov(a, q);
    const auto ode = integrate_covariance_ode(a, q);
    worst_diff = std::max(worst_diff, (v.matrix() - ode.covariance.matrix()).norm());
    worst_residual = std::max(worst_residual, lyapunov_residual(a.matrix(), v.matrix(), q.matrix()));
    store.push_back(v);
    ++accepted;
  }
  return {worst_diff < 1e-8 && worst_residual < 1e-10,
          fmt("100 configs: max ||V_lyap - V_ode||_F = %.2e, max residual/||Q||_F = %.2e", worst_diff, worst_residual)};
}

Outcome physicality() {
  auto& store = random_covariances();
  if (store.size() != 100) return {false, "cross-solver covariances missing"};
  double worst_sym = INFINITY, worst_rs = INFINITY;
  bool pass = true;
  for (const auto& v : store) {
    const auto p = physicality_check(v);
    worst_sym = std::min(worst_sym, p.min_symplectic_eigenvalue);
    worst_rs = std::min(worst_rs, p.worst_robertson_schrodinger_margin);
    pass = pass && p.physical && p.min_symplectic_eigenvalue >= -1e-10 && p.worst_robertson_schrodinger_margin >= -1e-10;
  }
  return {pass, fmt("min eig(V + iJ/2) = %.3e, min (det - 1/4) = %.3e", worst_sym, worst_rs)};
}

Outcome stability_boundary() {
  SweepSpec s = figure_preset("fig2a").front();
  s.axes[0] = Axis::linear("opa_gain", 0.3, 0.7, 9);
  const double edge = find_threshold(s, "stable", 0.5, {1e-10, 200}).value;

  std::mt19937_64 rng(777);
  oracle::RandomRanges wide;
  wide.gamma_min = 1e-4;
  wide.gain_max = 0.8;
  wide.coupling_max = 0.6;
  int compared = 0, disagree = 0, unstable = 0;
  while (compared < 200) {
    const std::size_t n = 1 + compared % 5;
    const auto a = build_drift_matrix(validate_config(oracle::random_config(rng, n, wide)));
    const auto st = is_stable(a);
    if (std::abs(st.margin) <= 1e-9) continue;
    ++compared;
    unstable += st.stable ? 0 : 1;
    disagree += routh_hurwitz_check(a) == st.stable ? 0 : 1;
  }
  return {std::abs(edge - 0.5) <= 1e-6 && disagree == 0,
          fmt("threshold = %.10f, Routh-Hurwitz disagreements %.0f of 200 (%.0f unstable)", edge, disagree,
              unstable)};
}

Outcome analytic_fixed_points() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_decoupled = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    SystemConfig c = oracle::random_config(rng, 1 + trial % 5);
    for (auto& g : c.coupling) g = 0.0;
    for (auto& h : c.hop_strength) h = 0.0;
    for (auto& g : c.gamma) g = std::pow(10.0, -5.0 + 4.0 * u(rng));
    c.opa_gain = 0.0;
    const auto cfg = validate_config(c);
    const auto v = solve_lyapunov(build_drift_matrix(cfg), build_noise_matrix(cfg));
    Eigen::VectorXd expected(2 * (c.n_mech + 1));
    for (std::size_t l = 0; l < c.n_mech; ++l) expected.segment(2 * l, 2).setConstant(c.nbar[l] + 0.5);
    expected.tail(2).setConstant(0.5);
    worst_decoupled = std::max(worst_decoupled, (v.matrix() - Eigen::MatrixXd(expected.asDiagonal())).cwiseAbs().maxCoeff());
  }

  double worst_dark = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double nbar = 20.0 * u(rng);
    const SystemConfig c = SystemConfig::uniform(2, 1.0, 10.0, 1e-5, 0.01 + 0.3 * u(rng), nbar, 0.01 + 0.2 * u(rng),
                                                 (trial % 3) * kPi, 0.45 * u(rng), 2 * kPi * u(rng));
    const auto cfg = validate_config(c);
    const auto d = mechanical_normal_modes(cfg);
    const auto dark = dark_mode_census(d);
    if (dark.size() != 1) return {false, "expected exactly one dark mode at theta = n pi"};
    const Eigen::MatrixXd w = normal_mode_covariance(solve_lyapunov(build_drift_matrix(cfg), build_noise_matrix(cfg)), d);
    const auto j = static_cast<Eigen::Index>(2 * dark[0]);
    worst_dark = std::max(worst_dark, (w.block(j, j, 2, 2) - (nbar + 0.5) * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
  }
  return {worst_decoupled < 1e-12 && worst_dark < 1e-8,
          fmt("decoupled max error %.2e, dark-mode block max error %.2e", worst_decoupled, worst_dark)};
}

Outcome label_swap() {
  std::vector<SystemConfig> bases{two_mode(0.1, 0.0)};
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 4; ++k) {
    bases.push_back(SystemConfig::uniform(2, 1.0, 10.0, std::pow(10.0, -5.0 + 3.0 * u(rng)), 0.3 * u(rng) + 0.01,
                                          20.0 * u(rng), 0.3 * u(rng) + 0.01, 0.0, 0.45 * u(rng), 2 * kPi * u(rng)));
  }
  double worst = 0.0;
  for (const auto& base : bases) {
    for (int k = 0; k <= 40; ++k) {
      const double theta = 2 * kPi * k / 40.0;
      SystemConfig a = base, b = base;
      a.hop_phase = {theta};
      b.hop_phase = {2 * kPi - theta};
      const auto ra = analyze(validate_config(a));
      const auto rb = analyze(validate_config(b));
      if (!ra.stable || !rb.stable) return {false, "unstable symmetric config"};
      worst = std::max(worst, std::abs(ra.modes[0].s_y_db - rb.modes[1].s_y_db));
    }
  }
  return {worst < 1e-10, fmt("%.0f configs x 41 phases: max |S_Y_b1(t) - S_Y_b2(2pi - t)| = %.2e dB",
                             static_cast<double>(bases.size()), worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cavity squeezing from the parametric amplifier alone", opa_only},
      {2, "phase switch of mechanical squeezing", dark_mode_switch},
      {3, "thermal robustness thresholds", thermal_thresholds},
      {4, "cooperativity and its sweep", cooperativity_behaviour},
      {5, "four-mode chain", four_mode_chain},
      {6, "Lyapunov solve vs covariance ODE", cross_solver},
      {7, "uncertainty relations", physicality},
      {8, "stability boundary and Routh-Hurwitz agreement", stability_boundary},
      {9, "analytic fixed points", analytic_fixed_points},
      {10, "mode-exchange symmetry", label_swap},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %2d  %-50s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
