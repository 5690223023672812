#include "pilotwave/medium.hpp"

#include <cmath>

#include "pilotwave/errors.hpp"

namespace pilotwave {

MediumParams MediumParams::with_effective_mass(double e, double B, double m_eff,
                                               double omega0) {
  MediumParams p;
  p.e = e;
  p.B = B;
  p.m_p = m_eff;
  p.sigma = 0.0;
  p.Omega_p = omega0;
  p.z0_abs = 0.0;
  p.omega0 = omega0;
  return p;
}

void MediumParams::validate() const {
  if (!std::isfinite(e) || !(e < 0.0)) throw InvalidParams("charge must be negative");
  if (!std::isfinite(B) || B < 0.0) throw InvalidParams("field_b must be nonnegative");
  if (!std::isfinite(m_p) || !(m_p > 0.0)) throw InvalidParams("mass_p must be positive");
  if (!std::isfinite(sigma) || sigma < 0.0) throw InvalidParams("sigma must be nonnegative");
  if (!std::isfinite(Omega_p) || !(Omega_p > 0.0)) {
    throw InvalidParams("omega_p_clock must be positive");
  }
  if (!std::isfinite(z0_abs) || z0_abs < 0.0) throw InvalidParams("z0_abs must be nonnegative");
  if (!std::isfinite(omega0) || !(omega0 > 0.0)) throw InvalidParams("omega0 must be positive");
}

double effective_mass(const MediumParams& params) {
  return params.m_p *
         (1.0 + params.sigma * params.Omega_p * params.Omega_p * params.z0_abs * params.z0_abs);
}

double landau_frequency(const MediumParams& params) {
  return -params.e * params.B / effective_mass(params);
}

double symmetric_gauge_potential(double B, double rho) { return 0.5 * B * rho; }

}  // namespace pilotwave
