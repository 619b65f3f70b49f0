#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "dmsq/model.hpp"

namespace dmsq {

/// Physical drive parameters. `mechanics` carries every SystemConfig field
/// except `coupling`, which linearize_from_drive fills in.
struct PhysicalDriveConfig {
  double omega_c = 0.0;      ///< cavity frequency (informational)
  double omega_L = 0.0;      ///< drive frequency (informational)
  double delta_c = 0.0;      ///< detuning omega_c - omega_L used by the fixed point
  double drive_amplitude = 0.0;  ///< |Omega|
  double drive_phase = 0.0;      ///< arg(Omega)
  std::vector<double> g_bare;    ///< single-photon couplings g_l
  SystemConfig mechanics;
};

struct FixedPointOptions {
  double relaxation = 0.5;
  double tolerance = 1e-12;
  std::size_t max_iterations = 10'000;
};

struct DriveLinearization {
  SystemConfig config;  ///< `mechanics` with coupling G_l = g_l |<a>_ss|
  std::complex<double> cavity_amplitude;                 ///< <a>_ss with the input phase of Omega
  std::vector<std::complex<double>> mechanical_amplitudes;  ///< <b_l>_ss
  double effective_detuning = 0.0;  ///< Delta = Delta_c + 2 sum g_l Re<b_l>
  std::size_t iterations = 0;
};

/// Damped fixed-point iteration on the effective detuning. Throws
/// NumericalError when the budget runs out, which signals a strong-drive or
/// multistable regime.
DriveLinearization linearize_from_drive(const PhysicalDriveConfig& drive,
                                        const FixedPointOptions& options = {});

}  // namespace dmsq
