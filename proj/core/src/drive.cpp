#include "dmsq/drive.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "dmsq/error.hpp"

namespace dmsq {

DriveLinearization linearize_from_drive(const PhysicalDriveConfig& drive,
                                        const FixedPointOptions& options) {
  using cplx = std::complex<double>;
  const SystemConfig& mech = drive.mechanics;
  const std::size_t n = mech.n_mech;
  if (!(mech.kappa > 0.0)) throw ConfigError("kappa", "must be positive");
  if (!(drive.drive_amplitude >= 0.0)) throw ConfigError("drive_amplitude", "must be nonnegative");
  if (!std::isfinite(drive.delta_c)) throw ConfigError("delta_c", "must be finite");
  if (drive.g_bare.size() != n) {
    throw ConfigError("g_bare", "expected " + std::to_string(n) + " entries");
  }
  if (mech.omega.size() != n || mech.gamma.size() != n) {
    throw ConfigError("mechanical", "omega/gamma lists do not match n_mech");
  }
  const std::size_t links = n > 0 ? n - 1 : 0;
  if (mech.hop_strength.size() != links || mech.hop_phase.size() != links) {
    throw ConfigError("hopping", "expected " + std::to_string(links) + " links");
  }

  // <b>_ss is linear in |<a>_ss|^2: K b = -i g |a|^2 with
  // K = diag(gamma_l + i omega_l) + i H_hop.
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd rhs(n);
  for (std::size_t l = 0; l < n; ++l) {
    k(l, l) = cplx(mech.gamma[l], mech.omega[l]);
    rhs(l) = cplx(0.0, -drive.g_bare[l]);
  }
  for (std::size_t l = 0; l < links; ++l) {
    const cplx hop = std::polar(mech.hop_strength[l], mech.hop_phase[l]);
    k(l, l + 1) += cplx(0.0, 1.0) * hop;
    k(l + 1, l) += cplx(0.0, 1.0) * std::conj(hop);
  }
  const Eigen::VectorXcd per_photon = k.partialPivLu().solve(rhs);

  double shift_per_photon = 0.0;
  for (std::size_t l = 0; l < n; ++l) shift_per_photon += 2.0 * drive.g_bare[l] * per_photon(l).real();

  const double kappa = mech.kappa;
  const double omega2 = drive.drive_amplitude * drive.drive_amplitude;
  const auto photons = [&](double detuning) { return omega2 / (kappa * kappa + detuning * detuning); };
  const auto update = [&](double detuning) { return drive.delta_c + shift_per_photon * photons(detuning); };

  double detuning = drive.delta_c;
  std::size_t it = 0;
  bool converged = false;
  while (it < options.max_iterations) {
    ++it;
    const double next = (1.0 - options.relaxation) * detuning + options.relaxation * update(detuning);
    const double step = std::abs(next - detuning);
    detuning = next;
    if (!std::isfinite(detuning)) break;
    if (step <= options.tolerance * std::max(1.0, std::abs(detuning))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError("drive fixed point did not converge within " +
                         std::to_string(options.max_iterations) +
                         " iterations (strong-drive or multistable regime)");
  }

  DriveLinearization out;
  out.iterations = it;
  out.effective_detuning = detuning;
  const cplx omega_c = std::polar(drive.drive_amplitude, drive.drive_phase);
  out.cavity_amplitude = cplx(0.0, -1.0) * omega_c / cplx(kappa, detuning);
  const double n_ph = photons(detuning);
  const double amp = std::sqrt(n_ph);
  out.mechanical_amplitudes.resize(n);
  for (std::size_t l = 0; l < n; ++l) out.mechanical_amplitudes[l] = n_ph * per_photon(l);

  out.config = mech;
  out.config.coupling.resize(n);
  for (std::size_t l = 0; l < n; ++l) out.config.coupling[l] = std::abs(drive.g_bare[l]) * amp;
  return out;
}

}  // namespace dmsq
