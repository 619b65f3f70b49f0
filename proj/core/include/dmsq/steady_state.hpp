#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dmsq/layout.hpp"
#include "dmsq/model.hpp"

namespace dmsq {

/// Real parts must lie strictly below -kStabilityEpsilon (kappa units).
inline constexpr double kStabilityEpsilon = 1e-12;

struct StabilityReport {
  bool stable = false;
  std::vector<std::complex<double>> eigenvalues;
  double margin = 0.0;  ///< max Re(lambda)
};

/// Eigenvalue test. Throws NumericalError if the eigen-solver fails, never
/// reports that case as unstable.
StabilityReport is_stable(const DriftMatrix& a);
StabilityReport is_stable(const Eigen::MatrixXd& a);

/// Largest dimension accepted by routh_hurwitz_check (N <= 5).
inline constexpr std::size_t kRouthHurwitzMaxDim = 12;

/// Coefficients c_0..c_n of det(s I - A) = sum c_k s^(n-k), c_0 = 1, computed
/// division-free (Berkowitz) in 50-digit binary floating point and rounded
/// to double for inspection.
std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& a);

/// Routh-Hurwitz verdict on the characteristic polynomial of A, evaluated
/// in extended precision. Throws std::invalid_argument above
/// kRouthHurwitzMaxDim; callers fall back to is_stable.
bool routh_hurwitz_check(const DriftMatrix& a);
bool routh_hurwitz_check(const Eigen::MatrixXd& a);

/// Steady-state covariance of the quadrature fluctuations, symmetric.
class CovarianceMatrix {
 public:
  CovarianceMatrix(std::size_t n_mech, Eigen::MatrixXd entries);

  const Eigen::MatrixXd& matrix() const { return entries_; }
  std::size_t n_mech() const { return n_mech_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  QuadratureLayout layout() const { return QuadratureLayout(n_mech_); }

  double variance(ModeId mode, Quadrature quad) const;
  double covariance(ModeId mode) const;  ///< <{X, Y}>/2 of one mode

  /// Vacuum state, 0.5 I.
  static CovarianceMatrix vacuum(std::size_t n_mech);

 private:
  std::size_t n_mech_;
  Eigen::MatrixXd entries_;
};

enum class LyapunovMethod {
  kAuto,       ///< Kronecker LU up to kKroneckerMaxDim, Schur above
  kKronecker,  ///< (I (x) A + A (x) I) vec V = -vec Q by dense LU
  kSchur,      ///< complex Schur form + triangular back-substitution
};

/// Up to four mechanical modes; the Schur path is faster beyond that.
inline constexpr std::size_t kKroneckerMaxDim = 10;

struct LyapunovOptions {
  LyapunovMethod method = LyapunovMethod::kAuto;
  double residual_tolerance = 1e-10;  ///< on ||A V + V A^T + Q||_F / ||Q||_F
};

/// ||A V + V A^T + Q||_F / ||Q||_F.
double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& v,
                         const Eigen::MatrixXd& q);

/// Solves A V + V A^T = -Q. Throws UnstableSystemError when A is not
/// stable and NumericalError when the residual exceeds the tolerance.
CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const NoiseMatrix& q,
                                const LyapunovOptions& options = {});

/// Raw-matrix form used by the oracle tests and benchmarks; no stability
/// precheck.
Eigen::MatrixXd solve_lyapunov_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q,
                                      LyapunovMethod method = LyapunovMethod::kAuto);

struct OdeOptions {
  double tolerance = 1e-12;        ///< stop when ||dV/dt||_F < tolerance
  double step_factor = 0.1;        ///< h = step_factor / spectral_radius(A)
  std::size_t max_steps = 20'000'000;
};

struct OdeResult {
  CovarianceMatrix covariance;
  std::size_t steps;
  double step;
  double final_derivative_norm;
};

/// Integrates dV/dt = A V + V A^T + Q with classical RK4 until the
/// derivative norm falls below tolerance. Independent of solve_lyapunov.
OdeResult integrate_covariance_ode(const DriftMatrix& a, const NoiseMatrix& q,
                                   const CovarianceMatrix& v0, const OdeOptions& options = {});

/// Same, starting from the decoupled diagonal V0_ii = Q_ii / (-2 A_ii).
OdeResult integrate_covariance_ode(const DriftMatrix& a, const NoiseMatrix& q,
                                   const OdeOptions& options = {});

}  // namespace dmsq
