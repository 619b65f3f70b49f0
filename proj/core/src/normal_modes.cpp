#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "dmsq/analysis.hpp"

namespace dmsq {
namespace {

using cplx = std::complex<double>;

// Rotate each degenerate eigenspace so that only its first vector couples to
// the cavity. Any basis of the eigenspace is equally valid; this one makes
// the bright/dark split unique.
void align_degenerate_blocks(Eigen::MatrixXcd& u, const Eigen::VectorXd& eps,
                             const Eigen::VectorXd& g, double scale) {
  const Eigen::Index n = eps.size();
  const double tol = 1e-9 * std::max(1.0, scale);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && eps(end) - eps(end - 1) <= tol) ++end;
    const Eigen::Index k = end - start;
    if (k > 1) {
      const Eigen::VectorXcd c = u.middleCols(start, k).transpose() * g.cast<cplx>();
      const double norm = c.norm();
      if (norm > 0.0) {
        const Eigen::VectorXcd first = c.conjugate() / norm;
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(first);
        const Eigen::MatrixXcd w = qr.householderQ() * Eigen::MatrixXcd::Identity(k, k);
        u.middleCols(start, k) = (u.middleCols(start, k) * w).eval();
      }
    }
    start = end;
  }
}

TwoModeClosedForm two_mode_closed_form(const SystemConfig& cfg, const NormalModeDecomposition& d) {
  const double w1 = cfg.omega[0], w2 = cfg.omega[1];
  const double eta = cfg.hop_strength[0], theta = cfg.hop_phase[0];
  TwoModeClosedForm cf;
  cf.omega_f = 0.5 * (w2 - w1 - std::sqrt((w1 - w2) * (w1 - w2) + 4.0 * eta * eta));
  cf.f = std::abs(cf.omega_f) / std::sqrt(cf.omega_f * cf.omega_f + eta * eta);
  cf.h = eta * cf.f / cf.omega_f;
  const double g1 = cfg.coupling[0], g2 = cfg.coupling[1];
  cf.coupling_plus = cf.f * g1 - std::polar(1.0, -theta) * cf.h * g2;
  cf.coupling_minus = cf.f * g2 + std::polar(1.0, theta) * cf.h * g1;
  cf.frequency_plus = w2 - cf.omega_f;
  cf.frequency_minus = w1 + cf.omega_f;
  // frequency_minus < frequency_plus always, so B_- is eigen index 0.
  cf.max_deviation = std::max({std::abs(cf.frequency_minus - d.frequencies(0)),
                               std::abs(cf.frequency_plus - d.frequencies(1)),
                               std::abs(std::abs(cf.coupling_minus) - std::abs(d.couplings(0))),
                               std::abs(std::abs(cf.coupling_plus) - std::abs(d.couplings(1)))});
  return cf;
}

}  // namespace

NormalModeDecomposition mechanical_normal_modes(const ValidatedConfig& vcfg) {
  const SystemConfig& cfg = vcfg.config();
  const auto n = static_cast<Eigen::Index>(cfg.n_mech);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXd g(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    m(l, l) = cfg.omega[l];
    g(l) = cfg.coupling[l];
  }
  for (Eigen::Index l = 0; l + 1 < n; ++l) {
    m(l, l + 1) = std::polar(cfg.hop_strength[l], cfg.hop_phase[l]);
    m(l + 1, l) = std::conj(m(l, l + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hopping-matrix diagonalization failed");

  NormalModeDecomposition d;
  d.frequencies = solver.eigenvalues();
  d.transform = solver.eigenvectors();
  const double scale = *std::max_element(cfg.omega.begin(), cfg.omega.end());
  align_degenerate_blocks(d.transform, d.frequencies, g, scale);
  d.couplings = d.transform.transpose() * g.cast<cplx>();
  d.max_coupling = g.maxCoeff();
  d.dark.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    d.dark[j] = std::abs(d.couplings(j)) < kDarkModeTolerance * d.max_coupling ||
                d.max_coupling == 0.0;
  }
  if (n == 2 && cfg.hop_strength[0] > 0.0) d.closed_form = two_mode_closed_form(cfg, d);
  return d;
}

std::vector<std::size_t> dark_mode_census(const NormalModeDecomposition& d, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("dark-mode tolerance must be positive");
  if (!(d.max_coupling > 0.0)) {
    throw std::domain_error("dark-mode census undefined: every optomechanical coupling is zero");
  }
  std::vector<std::size_t> dark;
  for (Eigen::Index j = 0; j < d.couplings.size(); ++j) {
    if (std::abs(d.couplings(j)) < tol * d.max_coupling) dark.push_back(static_cast<std::size_t>(j));
  }
  return dark;
}

Eigen::MatrixXd normal_mode_covariance(const CovarianceMatrix& v, const NormalModeDecomposition& d) {
  const Eigen::Index n = d.transform.rows();
  if (static_cast<std::size_t>(n) != v.n_mech()) {
    throw std::invalid_argument("decomposition and covariance disagree on the mode count");
  }
  // B_j = sum_l conj(U_lj) b_l; with conj(U_lj) = p + i q,
  // X_Bj = sum (p X_l - q Y_l) and Y_Bj = sum (q X_l + p Y_l).
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const cplx c = std::conj(d.transform(l, j));
      s(2 * j, 2 * l) = c.real();
      s(2 * j, 2 * l + 1) = -c.imag();
      s(2 * j + 1, 2 * l) = c.imag();
      s(2 * j + 1, 2 * l + 1) = c.real();
    }
  }
  const Eigen::MatrixXd mech = v.matrix().topLeftCorner(2 * n, 2 * n);
  return s * mech * s.transpose();
}

}  // namespace dmsq
