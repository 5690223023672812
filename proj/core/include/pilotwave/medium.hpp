#pragma once

// Natural units throughout: hbar = c = 1.

namespace pilotwave {

/// Physical constants of one scenario.
///
/// The charge is negative (an electron-like coupling) and the field points
/// along +z, so the Landau frequency -eB/m_eff is nonnegative. B = 0 is
/// accepted as the free limit.
struct MediumParams {
  double e = -1.0;        // charge, < 0
  double B = 0.0;         // field strength, >= 0
  double m_p = 1.0;       // bare mass, > 0
  double sigma = 0.0;     // internal coupling, >= 0
  double Omega_p = 1.0;   // internal clock frequency, > 0
  double z0_abs = 0.0;    // internal oscillation amplitude, >= 0
  double omega0 = 1.0;    // field mass, > 0

  /// Scenario given by its effective mass directly (sigma = 0, m_p = m_eff).
  [[nodiscard]] static MediumParams with_effective_mass(double e, double B,
                                                        double m_eff,
                                                        double omega0);

  /// Throws InvalidParams naming the first violated invariant.
  void validate() const;
};

/// m_p (1 + sigma Omega_p^2 |z0|^2)
[[nodiscard]] double effective_mass(const MediumParams& params);

/// -e B / m_eff
[[nodiscard]] double landau_frequency(const MediumParams& params);

/// Azimuthal component of the symmetric-gauge potential A = (B rho / 2) e_phi.
[[nodiscard]] double symmetric_gauge_potential(double B, double rho);

}  // namespace pilotwave
