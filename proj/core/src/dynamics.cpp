#include "pilotwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pilotwave/errors.hpp"
#include "pilotwave/numerics.hpp"

namespace pilotwave::dynamics {

double WorldlineSample::normalization_defect() const {
  return ut * ut - ux * ux - uy * uy - 1.0;
}

Orbit orbit_from_n(double n, const MediumParams& params) {
  if (!(n >= 0.0)) throw InvalidParams("orbit_from_n: n must be nonnegative");
  const double m = effective_mass(params);
  const double wl = landau_frequency(params);
  Orbit o;
  o.n = n;
  if (n == 0.0) {
    o.energy = m;
    return o;
  }
  const double s = 2.0 * n * wl / m;  // (gamma v)^2
  o.rho = std::sqrt(2.0 * n / (m * wl));
  o.v = 1.0 / std::sqrt(1.0 + m / (2.0 * n * wl));
  o.gamma = std::sqrt(1.0 + s);
  o.energy = m * o.gamma;
  o.p_canonical =
      o.gamma * m * o.v + params.e * symmetric_gauge_potential(params.B, o.rho);
  return o;
}

double bohr_sommerfeld(const Orbit& orbit, const MediumParams& params) {
  const double m = effective_mass(params);
  return orbit.rho * (orbit.gamma * m * orbit.v + 0.5 * params.e * params.B * orbit.rho);
}

double nonrel_energy(double n, const MediumParams& params) {
  if (!(n >= 0.0)) throw InvalidParams("nonrel_energy: n must be nonnegative");
  return effective_mass(params) + n * landau_frequency(params);
}

WorldlineSample initial_on_orbit(const Orbit& orbit) {
  WorldlineSample s;
  s.x = orbit.rho;
  s.uy = orbit.gamma * orbit.v;
  s.ut = orbit.gamma;
  return s;
}

double proper_period(const MediumParams& params) {
  return 2.0 * std::numbers::pi / landau_frequency(params);
}

namespace {

// State layout: t, x, y, ut, ux, uy.
enum : std::size_t { kT, kX, kY, kUt, kUx, kUy, kSize };

// B_z as the curl of the symmetric-gauge potential A = (-B y / 2, B x / 2).
double curl_of_symmetric_gauge(double B) {
  const double dAy_dx = 0.5 * B;
  const double dAx_dy = -0.5 * B;
  return dAy_dx - dAx_dy;
}

}  // namespace

std::vector<WorldlineSample> integrate_worldline(const WorldlineSample& initial,
                                                 const MediumParams& params,
                                                 double proper_duration,
                                                 double step) {
  if (!(step > 0.0)) throw InvalidParams("integrate_worldline: step must be positive");
  if (!(proper_duration >= 0.0)) {
    throw InvalidParams("integrate_worldline: duration must be nonnegative");
  }
  if (std::fabs(initial.normalization_defect()) > 1e-12) {
    throw InvalidParams("integrate_worldline: initial four-velocity not normalised");
  }

  const double coupling = params.e / effective_mass(params);
  const double bz = curl_of_symmetric_gauge(params.B);
  // du^i/dtau = (e/m) (u x B)^i, no electric field so ut is conserved.
  const numerics::Rhs rhs = [coupling, bz](const numerics::Vector& y) {
    numerics::Vector d(kSize, 0.0);
    d[kT] = y[kUt];
    d[kX] = y[kUx];
    d[kY] = y[kUy];
    d[kUx] = coupling * y[kUy] * bz;
    d[kUy] = -coupling * y[kUx] * bz;
    return d;
  };

  numerics::Vector y{initial.t, initial.x, initial.y, initial.ut, initial.ux, initial.uy};
  const auto full_steps = static_cast<std::size_t>(std::floor(proper_duration / step));
  std::vector<WorldlineSample> out;
  out.reserve(full_steps + 2);
  out.push_back(initial);

  auto advance = [&](double h, double tau) {
    y = numerics::rk4_step(y, rhs, h);
    WorldlineSample s{tau, y[kT], y[kX], y[kY], y[kUx], y[kUy], y[kUt]};
    const double drift = std::fabs(s.normalization_defect());
    if (drift > 1e-6) {
      throw StepTooLarge("integrate_worldline: normalisation drift " + std::to_string(drift) +
                         " at tau = " + std::to_string(tau));
    }
    out.push_back(s);
  };
  for (std::size_t i = 1; i <= full_steps; ++i) {
    advance(step, initial.tau + static_cast<double>(i) * step);
  }
  const double remainder = proper_duration - static_cast<double>(full_steps) * step;
  if (remainder > 1e-12 * step) advance(remainder, initial.tau + proper_duration);
  return out;
}

std::vector<WorldlineSample> resample_lab_time(std::span<const WorldlineSample> samples,
                                               std::span<const double> t_grid) {
  if (samples.size() < 2) throw InvalidParams("resample_lab_time: need two samples");
  std::vector<WorldlineSample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < samples.front().t || t > samples.back().t) {
      throw InvalidParams("resample_lab_time: t outside the integrated span");
    }
    auto hi = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const WorldlineSample& s, double v) { return s.t < v; });
    if (hi == samples.begin()) ++hi;
    const WorldlineSample& a = *(hi - 1);
    const WorldlineSample& b = *hi;
    const double dt = b.t - a.t;
    const double s = (t - a.t) / dt;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    // Lab-time derivatives dx/dt = ux / ut.
    auto hermite = [&](double pa, double pb, double va, double vb) {
      return h00 * pa + h10 * dt * va + h01 * pb + h11 * dt * vb;
    };
    WorldlineSample r;
    r.t = t;
    r.tau = hermite(a.tau, b.tau, 1.0 / a.ut, 1.0 / b.ut);
    r.x = hermite(a.x, b.x, a.ux / a.ut, b.ux / b.ut);
    r.y = hermite(a.y, b.y, a.uy / a.ut, b.uy / b.ut);
    r.ux = (1 - s) * a.ux + s * b.ux;
    r.uy = (1 - s) * a.uy + s * b.uy;
    r.ut = std::sqrt(1.0 + r.ux * r.ux + r.uy * r.uy);
    out.push_back(r);
  }
  return out;
}

}  // namespace pilotwave::dynamics
