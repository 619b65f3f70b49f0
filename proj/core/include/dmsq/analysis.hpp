#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dmsq/layout.hpp"
#include "dmsq/model.hpp"
#include "dmsq/steady_state.hpp"

namespace dmsq {

/// Zero-point variance of a quadrature X = (o^dag + o)/sqrt(2).
inline constexpr double kZeroPointVariance = 0.5;

double quadrature_variance(const CovarianceMatrix& v, ModeId mode, Quadrature quad);

/// -10 log10(variance / 0.5) in dB; positive means squeezed below vacuum.
/// Throws std::domain_error for a nonpositive or non-finite variance.
double squeezing_degree(double variance);

struct PhysicalityDiagnostic {
  bool physical = false;
  /// min eigenvalue of the Hermitian matrix V + (i/2) J.
  double min_symplectic_eigenvalue = 0.0;
  /// min over modes of var_x var_y - cov_xy^2 - 1/4.
  double worst_robertson_schrodinger_margin = 0.0;
  /// min over modes of var_x var_y - 1/4 (product form, no covariance term).
  double worst_heisenberg_margin = 0.0;
  std::vector<double> mode_determinants;  ///< var_x var_y - cov_xy^2 per mode
};

inline constexpr double kPhysicalityTolerance = 1e-10;

/// Diagnostic only; never throws on an unphysical matrix.
PhysicalityDiagnostic physicality_check(const CovarianceMatrix& v,
                                        double tolerance = kPhysicalityTolerance);

/// Closed-form two-mode normal modes, available for N = 2 and eta > 0.
struct TwoModeClosedForm {
  double f = 0.0;
  double h = 0.0;
  double omega_f = 0.0;
  std::complex<double> coupling_plus;
  std::complex<double> coupling_minus;
  double frequency_plus = 0.0;   ///< omega_2 - omega_f
  double frequency_minus = 0.0;  ///< omega_1 + omega_f
  /// Largest disagreement with the eigendecomposition over sorted |G~| and
  /// sorted frequencies.
  double max_deviation = 0.0;
};

struct NormalModeDecomposition {
  Eigen::VectorXd frequencies;   ///< eigenvalues eps_j of the hopping matrix, ascending
  Eigen::MatrixXcd transform;    ///< U with b_l = sum_j U_lj B_j
  Eigen::VectorXcd couplings;    ///< G~_j = sum_l G_l U_lj
  std::vector<bool> dark;        ///< |G~_j| < 1e-8 max_l G_l
  double max_coupling = 0.0;     ///< max_l G_l
  std::optional<TwoModeClosedForm> closed_form;
};

/// Diagonalizes M (M_ll = omega_l, M_{l,l+1} = eta_l e^{i theta_l}).
/// Inside a degenerate eigenspace the basis is rotated so that a single
/// vector carries all the coupling; the rest are exactly dark.
NormalModeDecomposition mechanical_normal_modes(const ValidatedConfig& cfg);

inline constexpr double kDarkModeTolerance = 1e-8;

/// Indices j with |G~_j| < tol * max_l G_l. Empty means every dark mode is
/// broken. Throws std::domain_error when all couplings vanish.
std::vector<std::size_t> dark_mode_census(const NormalModeDecomposition& d,
                                          double tol = kDarkModeTolerance);

/// G_l^2 / (kappa gamma_l). Throws std::out_of_range for a bad index.
double cooperativity(const ValidatedConfig& cfg, std::size_t l);

/// Mechanical covariance block rotated into the normal-mode quadratures
/// (X_B1, Y_B1, ..., X_BN, Y_BN) of the decomposition.
Eigen::MatrixXd normal_mode_covariance(const CovarianceMatrix& v, const NormalModeDecomposition& d);

struct ModeSqueezing {
  ModeId mode;
  double var_x;
  double var_y;
  double s_x_db;
  double s_y_db;
};

struct SqueezingReport {
  bool stable = false;
  double margin = 0.0;
  std::vector<ModeSqueezing> modes;  ///< b1..bN then a; empty when unstable
  std::vector<double> cooperativity;  ///< per mechanical mode
  std::optional<PhysicalityDiagnostic> physicality;

  /// nullptr when unstable or the mode is absent.
  const ModeSqueezing* find(ModeId mode) const;
};

SqueezingReport squeezing_report(const CovarianceMatrix& v, const ValidatedConfig& cfg,
                                 const StabilityReport& stability);

/// Builds A and Q, checks stability, solves the Lyapunov equation if stable
/// and assembles the report. Unstable systems yield a report with no modes.
SqueezingReport analyze(const ValidatedConfig& cfg);

}  // namespace dmsq
