#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dmsq/layout.hpp"

namespace dmsq {

/// Parameters of the linearized model: one cavity mode with an intracavity
/// parametric amplifier, N mechanical modes coupled to it, and a
/// nearest-neighbour phonon-hopping chain. All rates share one unit
/// (kappa by default); `unit` only changes report labels.
struct SystemConfig {
  std::size_t n_mech = 0;
  double kappa = 1.0;
  std::vector<double> omega;     ///< mechanical frequencies, size N
  std::vector<double> gamma;     ///< mechanical damping rates, size N
  std::vector<double> coupling;  ///< linearized couplings G_l, size N
  std::vector<double> nbar;      ///< bath occupations, size N
  std::vector<double> hop_strength;  ///< eta_l, size N-1
  std::vector<double> hop_phase;     ///< theta_l in radians, size N-1
  double opa_gain = 0.0;             ///< Lambda
  double opa_phase = 0.0;            ///< phi in radians
  std::string unit = "kappa";

  /// N identical mechanical modes and N-1 identical links.
  static SystemConfig uniform(std::size_t n_mech, double kappa, double omega, double gamma,
                              double coupling, double nbar, double hop_strength, double hop_phase,
                              double opa_gain, double opa_phase);
};

enum class AdvisoryKind {
  kUnresolvedSideband,    ///< omega_l / kappa < 5
  kStrongCoupling,        ///< G_l >= 0.2 omega_l
  kStrongParametricGain,  ///< Lambda >= 0.2 omega_l
  kNonDegenerate,         ///< omega_l differ; the RWA model assumes a common resonance
};

struct Advisory {
  AdvisoryKind kind;
  std::string message;
};

inline constexpr double kResolvedSidebandRatio = 5.0;
inline constexpr double kRwaStrengthRatio = 0.2;

/// A SystemConfig that passed validate_config. Immutable.
class ValidatedConfig {
 public:
  const SystemConfig& config() const { return config_; }
  const std::vector<Advisory>& advisories() const { return advisories_; }
  std::size_t n_mech() const { return config_.n_mech; }
  QuadratureLayout layout() const { return QuadratureLayout(config_.n_mech); }

  bool has_advisory(AdvisoryKind kind) const;

 private:
  friend ValidatedConfig validate_config(SystemConfig cfg);
  ValidatedConfig(SystemConfig cfg, std::vector<Advisory> advisories)
      : config_(std::move(cfg)), advisories_(std::move(advisories)) {}

  SystemConfig config_;
  std::vector<Advisory> advisories_;
};

/// Structural checks throw ConfigError naming the field; regime checks
/// (resolved sideband, RWA strength, degeneracy) become advisories.
ValidatedConfig validate_config(SystemConfig cfg);

/// Drift matrix A of du/dt = A u + noise in the layout of QuadratureLayout.
class DriftMatrix {
 public:
  DriftMatrix(std::size_t n_mech, Eigen::MatrixXd entries);

  const Eigen::MatrixXd& matrix() const { return entries_; }
  std::size_t n_mech() const { return n_mech_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  QuadratureLayout layout() const { return QuadratureLayout(n_mech_); }

  /// Mechanical 2N x 2N block (damping plus hopping).
  Eigen::MatrixXd mechanical_block() const;
  /// Optical 2x2 block (cavity decay plus parametric gain).
  Eigen::Matrix2d optical_block() const;

 private:
  std::size_t n_mech_;
  Eigen::MatrixXd entries_;
};

/// Diagonal input-noise matrix Q of the Lyapunov equation.
class NoiseMatrix {
 public:
  NoiseMatrix(std::size_t n_mech, Eigen::VectorXd diagonal);

  const Eigen::VectorXd& diagonal() const { return diagonal_; }
  Eigen::MatrixXd matrix() const { return diagonal_.asDiagonal(); }
  std::size_t n_mech() const { return n_mech_; }
  std::size_t dim() const { return static_cast<std::size_t>(diagonal_.size()); }

 private:
  std::size_t n_mech_;
  Eigen::VectorXd diagonal_;
};

DriftMatrix build_drift_matrix(const ValidatedConfig& cfg);
NoiseMatrix build_noise_matrix(const ValidatedConfig& cfg);

}  // namespace dmsq
