#pragma once

#include <span>
#include <vector>

#include "pilotwave/medium.hpp"

namespace pilotwave::dynamics {

/// Circular cyclotron orbit labelled by the Bohr-Sommerfeld constant n.
struct Orbit {
  double n = 0.0;
  double rho = 0.0;
  double v = 0.0;
  double gamma = 1.0;
  double energy = 0.0;
  double p_canonical = 0.0;  // gamma m_eff v + e A_phi(rho)
};

/// One point of a proper-time parametrised worldline in the (x, y) plane.
struct WorldlineSample {
  double tau = 0.0;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double ux = 0.0;
  double uy = 0.0;
  double ut = 1.0;

  /// ut^2 - ux^2 - uy^2 - 1
  [[nodiscard]] double normalization_defect() const;
};

/// Closed-form orbit. n = 0 is the rest orbit (rho = 0, v = 0, E = m_eff).
/// Throws InvalidParams for n < 0.
[[nodiscard]] Orbit orbit_from_n(double n, const MediumParams& params);

/// rho (gamma m_eff v + e B rho / 2), i.e. the loop integral of P dl over 2 pi.
[[nodiscard]] double bohr_sommerfeld(const Orbit& orbit, const MediumParams& params);

/// m_eff + n omega_L
[[nodiscard]] double nonrel_energy(double n, const MediumParams& params);

/// Sample on the orbit at phi = 0 moving in the +phi direction (e < 0, B > 0
/// drives counter-clockwise motion about +z).
[[nodiscard]] WorldlineSample initial_on_orbit(const Orbit& orbit);

/// Fixed-step RK4 integration of m_eff du/dtau = e F u in the symmetric gauge.
/// Returns every step including the initial sample. The final step is
/// shortened to land on `proper_duration`.
///
/// Throws InvalidParams if the initial four-velocity is not normalised to
/// 1e-12, StepTooLarge if the drift exceeds 1e-6 along the way.
[[nodiscard]] std::vector<WorldlineSample> integrate_worldline(
    const WorldlineSample& initial, const MediumParams& params,
    double proper_duration, double step);

/// Cubic Hermite resampling of a worldline onto lab times inside its span.
[[nodiscard]] std::vector<WorldlineSample> resample_lab_time(
    std::span<const WorldlineSample> samples, std::span<const double> t_grid);

/// Proper-time cyclotron period 2 pi / omega_L.
[[nodiscard]] double proper_period(const MediumParams& params);

}  // namespace pilotwave::dynamics
