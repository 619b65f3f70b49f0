#include "dmsq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace dmsq {

double quadrature_variance(const CovarianceMatrix& v, ModeId mode, Quadrature quad) {
  return v.variance(mode, quad);
}

double squeezing_degree(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::domain_error("squeezing degree needs a positive finite variance");
  }
  return -10.0 * std::log10(variance / kZeroPointVariance);
}

PhysicalityDiagnostic physicality_check(const CovarianceMatrix& v, double tolerance) {
  const QuadratureLayout lay = v.layout();
  const auto dim = static_cast<Eigen::Index>(lay.dim());
  Eigen::MatrixXcd h = v.matrix().cast<std::complex<double>>();
  const std::complex<double> half_i(0.0, 0.5);
  for (std::size_t m = 0; m <= lay.n_mech(); ++m) {
    const auto x = static_cast<Eigen::Index>(2 * m);
    h(x, x + 1) += half_i;
    h(x + 1, x) -= half_i;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);

  PhysicalityDiagnostic out;
  out.min_symplectic_eigenvalue =
      solver.info() == Eigen::Success ? solver.eigenvalues().minCoeff()
                                      : -std::numeric_limits<double>::infinity();
  out.worst_robertson_schrodinger_margin = std::numeric_limits<double>::infinity();
  out.worst_heisenberg_margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index x = 0; x < dim; x += 2) {
    const double vx = v.matrix()(x, x);
    const double vy = v.matrix()(x + 1, x + 1);
    const double cxy = v.matrix()(x, x + 1);
    const double det = vx * vy - cxy * cxy;
    out.mode_determinants.push_back(det);
    out.worst_robertson_schrodinger_margin =
        std::min(out.worst_robertson_schrodinger_margin, det - 0.25);
    out.worst_heisenberg_margin = std::min(out.worst_heisenberg_margin, vx * vy - 0.25);
  }
  out.physical = out.min_symplectic_eigenvalue >= -tolerance &&
                 out.worst_robertson_schrodinger_margin >= -tolerance;
  return out;
}

double cooperativity(const ValidatedConfig& vcfg, std::size_t l) {
  const SystemConfig& cfg = vcfg.config();
  if (l >= cfg.n_mech) {
    throw std::out_of_range("mechanical index " + std::to_string(l) + " out of range");
  }
  // Two quotients instead of G^2 / (kappa gamma): 0.1^2 is not representable,
  // and this order keeps round values such as C = 1000 exact.
  return (cfg.coupling[l] / cfg.kappa) * (cfg.coupling[l] / cfg.gamma[l]);
}

const ModeSqueezing* SqueezingReport::find(ModeId mode) const {
  const auto it = std::find_if(modes.begin(), modes.end(),
                               [mode](const ModeSqueezing& m) { return m.mode == mode; });
  return it == modes.end() ? nullptr : &*it;
}

SqueezingReport squeezing_report(const CovarianceMatrix& v, const ValidatedConfig& cfg,
                                 const StabilityReport& stability) {
  SqueezingReport report;
  report.stable = stability.stable;
  report.margin = stability.margin;
  for (std::size_t l = 0; l < cfg.n_mech(); ++l) report.cooperativity.push_back(cooperativity(cfg, l));
  if (!stability.stable) return report;

  const auto add = [&](ModeId mode) {
    const double vx = v.variance(mode, Quadrature::X);
    const double vy = v.variance(mode, Quadrature::Y);
    report.modes.push_back({mode, vx, vy, squeezing_degree(vx), squeezing_degree(vy)});
  };
  for (std::size_t l = 0; l < cfg.n_mech(); ++l) add(ModeId::mechanical(l));
  add(ModeId::optical());
  report.physicality = physicality_check(v);
  return report;
}

SqueezingReport analyze(const ValidatedConfig& cfg) {
  const DriftMatrix a = build_drift_matrix(cfg);
  const StabilityReport st = is_stable(a);
  if (!st.stable) {
    return squeezing_report(CovarianceMatrix::vacuum(cfg.n_mech()), cfg, st);
  }
  const CovarianceMatrix v = solve_lyapunov(a, build_noise_matrix(cfg));
  return squeezing_report(v, cfg, st);
}

}  // namespace dmsq
