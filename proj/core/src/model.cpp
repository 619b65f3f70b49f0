#include "dmsq/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dmsq/error.hpp"

namespace dmsq {
namespace {

std::string indexed(const char* list, std::size_t i, const char* field) {
  return std::string(list) + "[" + std::to_string(i) + "]." + field;
}

void require_size(const std::vector<double>& v, std::size_t expected, const char* name) {
  if (v.size() != expected) {
    throw ConfigError(name, "expected " + std::to_string(expected) + " entries, got " +
                                std::to_string(v.size()));
  }
}

void require_finite(double x, const std::string& field) {
  if (!std::isfinite(x)) throw ConfigError(field, "value is not finite");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << x;
  return os.str();
}

}  // namespace

SystemConfig SystemConfig::uniform(std::size_t n_mech, double kappa, double omega, double gamma,
                                   double coupling, double nbar, double hop_strength,
                                   double hop_phase, double opa_gain, double opa_phase) {
  SystemConfig cfg;
  cfg.n_mech = n_mech;
  cfg.kappa = kappa;
  cfg.omega.assign(n_mech, omega);
  cfg.gamma.assign(n_mech, gamma);
  cfg.coupling.assign(n_mech, coupling);
  cfg.nbar.assign(n_mech, nbar);
  const std::size_t links = n_mech > 0 ? n_mech - 1 : 0;
  cfg.hop_strength.assign(links, hop_strength);
  cfg.hop_phase.assign(links, hop_phase);
  cfg.opa_gain = opa_gain;
  cfg.opa_phase = opa_phase;
  return cfg;
}

bool ValidatedConfig::has_advisory(AdvisoryKind kind) const {
  return std::any_of(advisories_.begin(), advisories_.end(),
                     [kind](const Advisory& a) { return a.kind == kind; });
}

ValidatedConfig validate_config(SystemConfig cfg) {
  const std::size_t n = cfg.n_mech;
  if (n == 0) throw ConfigError("n_mech", "at least one mechanical mode is required");

  require_size(cfg.omega, n, "omega");
  require_size(cfg.gamma, n, "gamma");
  require_size(cfg.coupling, n, "coupling");
  require_size(cfg.nbar, n, "nbar");
  require_size(cfg.hop_strength, n - 1, "hop_strength");
  require_size(cfg.hop_phase, n - 1, "hop_phase");

  require_finite(cfg.kappa, "kappa");
  if (cfg.kappa <= 0.0) throw ConfigError("kappa", "must be positive");
  require_finite(cfg.opa_gain, "opa_gain");
  if (cfg.opa_gain < 0.0) throw ConfigError("opa_gain", "must be nonnegative");
  require_finite(cfg.opa_phase, "opa_phase");

  for (std::size_t l = 0; l < n; ++l) {
    const auto field = [l](const char* f) { return indexed("mechanical", l, f); };
    require_finite(cfg.omega[l], field("omega"));
    require_finite(cfg.gamma[l], field("gamma"));
    require_finite(cfg.coupling[l], field("coupling"));
    require_finite(cfg.nbar[l], field("nbar"));
    if (cfg.omega[l] <= 0.0) throw ConfigError(field("omega"), "must be positive");
    if (cfg.gamma[l] <= 0.0) throw ConfigError(field("gamma"), "must be positive");
    if (cfg.coupling[l] < 0.0) throw ConfigError(field("coupling"), "must be nonnegative");
    if (cfg.nbar[l] < 0.0) throw ConfigError(field("nbar"), "must be nonnegative");
  }
  for (std::size_t l = 0; l + 1 < n; ++l) {
    require_finite(cfg.hop_strength[l], indexed("hopping", l, "strength"));
    require_finite(cfg.hop_phase[l], indexed("hopping", l, "phase"));
    if (cfg.hop_strength[l] < 0.0) {
      throw ConfigError(indexed("hopping", l, "strength"), "must be nonnegative");
    }
  }

  std::vector<Advisory> advisories;
  for (std::size_t l = 0; l < n; ++l) {
    const std::string mode = "b" + std::to_string(l + 1);
    if (cfg.omega[l] / cfg.kappa < kResolvedSidebandRatio) {
      advisories.push_back({AdvisoryKind::kUnresolvedSideband,
                            mode + ": omega/kappa = " + fmt(cfg.omega[l] / cfg.kappa) +
                                " is below the resolved-sideband threshold " +
                                fmt(kResolvedSidebandRatio)});
    }
    if (cfg.coupling[l] >= kRwaStrengthRatio * cfg.omega[l]) {
      advisories.push_back({AdvisoryKind::kStrongCoupling,
                            mode + ": G/omega = " + fmt(cfg.coupling[l] / cfg.omega[l]) +
                                " leaves the rotating-wave regime"});
    }
    if (cfg.opa_gain >= kRwaStrengthRatio * cfg.omega[l]) {
      advisories.push_back({AdvisoryKind::kStrongParametricGain,
                            mode + ": Lambda/omega = " + fmt(cfg.opa_gain / cfg.omega[l]) +
                                " leaves the rotating-wave regime"});
    }
  }
  const auto [lo, hi] = std::minmax_element(cfg.omega.begin(), cfg.omega.end());
  if (*hi - *lo > 1e-12 * *hi) {
    advisories.push_back({AdvisoryKind::kNonDegenerate,
                          "mechanical frequencies differ; the model assumes red-sideband "
                          "resonance with a single degenerate frequency"});
  }
  return ValidatedConfig(std::move(cfg), std::move(advisories));
}

DriftMatrix::DriftMatrix(std::size_t n_mech, Eigen::MatrixXd entries)
    : n_mech_(n_mech), entries_(std::move(entries)) {
  const auto dim = static_cast<Eigen::Index>(2 * (n_mech + 1));
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("drift matrix must be " + std::to_string(dim) + "x" +
                                std::to_string(dim));
  }
}

Eigen::MatrixXd DriftMatrix::mechanical_block() const {
  const auto m = static_cast<Eigen::Index>(2 * n_mech_);
  return entries_.topLeftCorner(m, m);
}

Eigen::Matrix2d DriftMatrix::optical_block() const {
  return entries_.bottomRightCorner<2, 2>();
}

NoiseMatrix::NoiseMatrix(std::size_t n_mech, Eigen::VectorXd diagonal)
    : n_mech_(n_mech), diagonal_(std::move(diagonal)) {
  if (diagonal_.size() != static_cast<Eigen::Index>(2 * (n_mech + 1))) {
    throw std::invalid_argument("noise matrix diagonal has the wrong length");
  }
}

DriftMatrix build_drift_matrix(const ValidatedConfig& vcfg) {
  const SystemConfig& cfg = vcfg.config();
  const QuadratureLayout lay = vcfg.layout();
  const std::size_t n = cfg.n_mech;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(lay.dim(), lay.dim());

  for (std::size_t l = 0; l < n; ++l) {
    a(lay.mech_x(l), lay.mech_x(l)) = -cfg.gamma[l];
    a(lay.mech_y(l), lay.mech_y(l)) = -cfg.gamma[l];
  }

  // Hopping eta e^{i theta} b_l^dag b_{l+1} + h.c. A term -i c b' in db/dt
  // contributes [[Im c, Re c], [-Re c, Im c]] acting on (X', Y'); the
  // partner sees c* = eta e^{-i theta}.
  for (std::size_t l = 0; l + 1 < n; ++l) {
    const double es = cfg.hop_strength[l] * std::sin(cfg.hop_phase[l]);
    const double ec = cfg.hop_strength[l] * std::cos(cfg.hop_phase[l]);
    const std::size_t xl = lay.mech_x(l), yl = lay.mech_y(l);
    const std::size_t xr = lay.mech_x(l + 1), yr = lay.mech_y(l + 1);
    a(xl, xr) += es;
    a(xl, yr) += ec;
    a(yl, xr) += -ec;
    a(yl, yr) += es;
    a(xr, xl) += -es;
    a(xr, yl) += ec;
    a(yr, xl) += -ec;
    a(yr, yl) += -es;
  }

  const double two_lambda = 2.0 * cfg.opa_gain;
  const double cphi = std::cos(cfg.opa_phase);
  const double sphi = std::sin(cfg.opa_phase);
  a(lay.cav_x(), lay.cav_x()) = -(cfg.kappa - two_lambda * cphi);
  a(lay.cav_x(), lay.cav_y()) = two_lambda * sphi;
  a(lay.cav_y(), lay.cav_x()) = two_lambda * sphi;
  a(lay.cav_y(), lay.cav_y()) = -(cfg.kappa + two_lambda * cphi);

  // Beam-splitter coupling: block P has P(X_bl, Y_a) = G_l and
  // P(Y_bl, X_a) = -G_l; the lower-left block is -P^T.
  for (std::size_t l = 0; l < n; ++l) {
    const double g = cfg.coupling[l];
    a(lay.mech_x(l), lay.cav_y()) += g;
    a(lay.mech_y(l), lay.cav_x()) += -g;
    a(lay.cav_x(), lay.mech_y(l)) += g;
    a(lay.cav_y(), lay.mech_x(l)) += -g;
  }
  return DriftMatrix(n, std::move(a));
}

NoiseMatrix build_noise_matrix(const ValidatedConfig& vcfg) {
  const SystemConfig& cfg = vcfg.config();
  const QuadratureLayout lay = vcfg.layout();
  Eigen::VectorXd q(lay.dim());
  for (std::size_t l = 0; l < cfg.n_mech; ++l) {
    const double strength = cfg.gamma[l] * (2.0 * cfg.nbar[l] + 1.0);
    q(lay.mech_x(l)) = strength;
    q(lay.mech_y(l)) = strength;
  }
  q(lay.cav_x()) = cfg.kappa;
  q(lay.cav_y()) = cfg.kappa;
  return NoiseMatrix(cfg.n_mech, std::move(q));
}

}  // namespace dmsq
