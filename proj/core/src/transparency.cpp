#include "pilotwave/transparency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pilotwave/errors.hpp"

namespace pilotwave::transparency {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kReconstructionSamples = 32;
constexpr double kReconstructionTol = 1e-13;

struct ResolvedTolerances {
  double guidance, guidance_epsilon, guidance_eta, debroglie_omega, debroglie_k, landau_field,
      landau_particle, mass_match;
};

ResolvedTolerances resolve(const Tolerances& t, int n, const MediumParams& params) {
  const double r = n * -params.e * params.B / (params.omega0 * params.omega0);
  const double nwl = n * landau_frequency(params);
  const double m = effective_mass(params);
  return {t.guidance.value_or(1e-12),
          t.guidance_epsilon.value_or(5.0 * r * r),
          t.guidance_eta.value_or(1e-12),
          t.debroglie_omega.value_or(5.0 * r * r),
          t.debroglie_k.value_or(1e-12),
          t.landau_field.value_or(10.0 * r * r * params.omega0),
          t.landau_particle.value_or(2.0 * nwl * nwl / m),
          t.mass_match.value_or(1e-12)};
}

Check gate(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

}  // namespace

Complex PhaseGroupForm::product(double phi, double t) const {
  const double s = rho * phi;
  return u0 * std::polar(1.0, k_env * s - omega * t) * std::cos(k * s - omega_env * t);
}

PhaseGroupForm phase_group_decompose(const modes::ModePair& pair, const dynamics::Orbit& orbit) {
  if (!(orbit.rho > 0.0) || !std::isfinite(orbit.rho)) {
    throw InvalidParams("phase_group_decompose: orbit radius must be positive and finite");
  }
  const double rho = orbit.rho;
  const double a_plus = pair.c_plus * modes::radial_profile(pair.plus, rho);
  const double a_minus = pair.c_minus * modes::radial_profile(pair.minus, rho);
  const double scale = std::max(std::fabs(a_plus), std::fabs(a_minus));
  if (scale == 0.0 || std::fabs(a_plus - a_minus) > 1e-12 * scale) {
    throw AmplitudeMismatch("phase_group_decompose: on-circle amplitudes differ (" +
                            std::to_string(a_plus) + " vs " + std::to_string(a_minus) + ")");
  }

  const MediumParams& field = pair.plus.params;
  const double k_plus = pair.plus.index.m / rho;
  const double k_minus = pair.minus.index.m / rho;

  PhaseGroupForm f;
  f.rho = rho;
  f.u0 = a_plus + a_minus;
  f.k = 0.5 * (k_plus - k_minus);
  f.k_env = 0.5 * (k_plus + k_minus);
  f.omega = 0.5 * (pair.plus.omega + pair.minus.omega);
  f.omega_env = 0.5 * (pair.plus.omega - pair.minus.omega);
  f.eta = field.e * symmetric_gauge_potential(field.B, rho);
  const double kinetic = f.k - f.eta;
  f.epsilon = std::sqrt(kinetic * kinetic + field.omega0 * field.omega0) - f.omega;

  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> t_dist(0.0, kTwoPi / f.omega);
  std::uniform_real_distribution<double> phi_dist(0.0, kTwoPi);
  for (int i = 0; i < kReconstructionSamples; ++i) {
    const double t = t_dist(rng);
    const double phi = phi_dist(rng);
    const Complex sum = modes::superpose_pair(pair, {t, rho, phi, 0.0});
    f.reconstruction_error =
        std::max(f.reconstruction_error, std::abs(sum - f.product(phi, t)) / std::fabs(f.u0));
  }
  if (f.reconstruction_error > kReconstructionTol) {
    throw AmplitudeMismatch("phase_group_decompose: reconstruction error " +
                            std::to_string(f.reconstruction_error));
  }
  return f;
}

double guidance_identity(const dynamics::Orbit& orbit, const MediumParams& params) {
  const double gauge = params.e * symmetric_gauge_potential(params.B, orbit.rho);
  return std::fabs((orbit.p_canonical - gauge) / orbit.energy - orbit.v);
}

GuidanceResult guidance_residual(const dynamics::Orbit& orbit, const PhaseGroupForm& form,
                                 const MediumParams& params) {
  GuidanceResult g;
  g.residual = std::fabs((form.k - form.eta) / form.omega - orbit.v);
  g.epsilon = std::fabs(form.epsilon) / form.omega;
  g.eta_gap = std::fabs(form.eta - 0.5 * params.e * params.B * orbit.rho);
  return g;
}

DeBroglieResiduals debroglie_residuals(const dynamics::Orbit& orbit, const modes::ModePair& pair) {
  if (!(orbit.n > 0.0)) throw InvalidParams("debroglie_residuals: needs n > 0");
  DeBroglieResiduals r;
  r.omega = std::fabs(modes::pair_frequency(pair) - orbit.energy) / orbit.energy;
  const double k = 0.5 * (pair.plus.index.m - pair.minus.index.m) / orbit.rho;
  r.k = std::fabs(k * orbit.rho - orbit.n) / orbit.n;
  return r;
}

Complex InternalClock::at(double tau) const { return z0 * std::polar(1.0, -Omega_p * tau); }

InternalClock synchronized_clock(const dynamics::Orbit& orbit, const modes::ModePair& pair,
                                 ClockMatching matching) {
  InternalClock c;
  c.z0 = modes::superpose_pair(pair, {0.0, orbit.rho, 0.0, 0.0});
  const double omega = modes::pair_frequency(pair);
  if (matching == ClockMatching::literal || !(orbit.rho > 0.0)) {
    c.Omega_p = omega;
  } else {
    const double k = 0.5 * (pair.plus.index.m - pair.minus.index.m) / orbit.rho;
    c.Omega_p = orbit.gamma * (omega - k * orbit.v);
  }
  return c;
}

double holonomic_residual(const dynamics::Orbit& orbit, const modes::ModePair& pair,
                          const InternalClock& clock, std::span<const double> t_grid) {
  const double z0 = std::abs(clock.z0);
  if (z0 == 0.0) throw InvalidParams("holonomic_residual: clock amplitude is zero");
  const double angular = orbit.rho > 0.0 ? orbit.v / orbit.rho : 0.0;
  double worst = 0.0;
  for (double t : t_grid) {
    const Complex u = modes::superpose_pair(pair, {t, orbit.rho, angular * t, 0.0});
    worst = std::max(worst, std::abs(clock.at(t / orbit.gamma) - u) / z0);
  }
  return worst;
}

std::vector<double> orbit_time_grid(const dynamics::Orbit& orbit, const MediumParams& params,
                                    int periods, int samples_per_period) {
  const double period = kTwoPi * orbit.gamma / landau_frequency(params);
  const int count = periods * samples_per_period;
  std::vector<double> grid(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) grid[i] = period * i / samples_per_period;
  return grid;
}

bool Tolerances::set(const std::string& name, double value) {
  std::optional<double>* slot = nullptr;
  if (name == "guidance") slot = &guidance;
  else if (name == "guidance_epsilon") slot = &guidance_epsilon;
  else if (name == "guidance_eta") slot = &guidance_eta;
  else if (name == "debroglie_omega") slot = &debroglie_omega;
  else if (name == "debroglie_k") slot = &debroglie_k;
  else if (name == "landau_field") slot = &landau_field;
  else if (name == "landau_particle") slot = &landau_particle;
  else if (name == "mass_match") slot = &mass_match;
  if (slot == nullptr) return false;
  *slot = value;
  return true;
}

std::vector<std::string> TransparencyReport::failing() const {
  std::vector<std::string> out;
  for (const Check& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

TransparencyReport evaluate_pair(const modes::ModePair& pair, const MediumParams& params,
                                 const Tolerances& tolerances) {
  params.validate();
  const int n = pair.n();
  if (n < 1) throw InvalidParams("evaluate_pair: pair must carry n >= 1");
  const dynamics::Orbit orbit = dynamics::orbit_from_n(n, params);
  const double m = effective_mass(params);
  const ResolvedTolerances tol = resolve(tolerances, n, params);

  TransparencyReport r;
  r.n = n;
  r.plus = pair.plus.index;
  r.minus = pair.minus.index;
  r.pairs_considered = 1;
  r.particle_energy = orbit.energy;
  r.particle_landau = dynamics::nonrel_energy(n, params);
  r.pair_frequency = modes::pair_frequency(pair);
  r.weak_field = modes::weak_field_frequency(n, params);
  r.landau_gap = std::fabs(r.pair_frequency - r.weak_field);
  r.particle_landau_gap = std::fabs(r.particle_energy - r.particle_landau);
  r.mass_match_gap = std::fabs(params.omega0 - m);
  r.debroglie_omega_residual = std::fabs(r.pair_frequency - r.particle_energy) / r.particle_energy;

  double on_circle = kNaN;
  if (params.B > 0.0) {
    on_circle = std::min(
        std::fabs(modes::radial_profile(pair.plus, orbit.rho)) / pair.plus.amplitude,
        std::fabs(modes::radial_profile(pair.minus, orbit.rho)) / pair.minus.amplitude);
    r.node_on_orbit = on_circle <= modes::kNodeTolerance;
  }

  if (params.B > 0.0 && !r.node_on_orbit) {
    const modes::ModePair eq = modes::equalize_on_circle(pair, orbit.rho);
    const PhaseGroupForm form = phase_group_decompose(eq, orbit);
    const GuidanceResult g = guidance_residual(orbit, form, params);
    const DeBroglieResiduals db = debroglie_residuals(orbit, eq);
    const auto grid = orbit_time_grid(orbit, params, 10, 64);

    r.guidance_residual = guidance_identity(orbit, params);
    r.guidance_field_residual = g.residual;
    r.epsilon = form.epsilon;
    r.eta = form.eta;
    r.eta_gap = g.eta_gap;
    r.debroglie_k_residual = db.k;
    r.holonomic_residual =
        holonomic_residual(orbit, eq, synchronized_clock(orbit, eq, ClockMatching::literal), grid);
    r.holonomic_residual_lorentz = holonomic_residual(
        orbit, eq, synchronized_clock(orbit, eq, ClockMatching::lorentz_corrected), grid);

    r.checks.push_back(gate("guidance", r.guidance_residual, tol.guidance));
    r.checks.push_back(gate("guidance_epsilon", g.epsilon, tol.guidance_epsilon));
    r.checks.push_back(gate("guidance_eta", g.eta_gap,
                            tol.guidance_eta * std::fabs(0.5 * params.e * params.B * orbit.rho)));
  } else {
    // Free limit (orbit radius unbounded) or a node on the circle: only
    // frequencies are defined.
    r.guidance_residual = r.guidance_field_residual = r.epsilon = r.eta = r.eta_gap = kNaN;
    r.debroglie_k_residual = r.holonomic_residual = r.holonomic_residual_lorentz = kNaN;
  }

  if (r.node_on_orbit) {
    r.checks.push_back({"orbit_amplitude", on_circle, modes::kNodeTolerance, false});
  }
  r.checks.push_back(gate("debroglie_omega", r.debroglie_omega_residual, tol.debroglie_omega));
  if (params.B > 0.0 && !r.node_on_orbit) {
    r.checks.push_back(gate("debroglie_k", r.debroglie_k_residual, tol.debroglie_k));
  }
  r.checks.push_back(gate("landau_field", r.landau_gap, tol.landau_field));
  r.checks.push_back(gate("landau_particle", r.particle_landau_gap, tol.landau_particle));
  r.checks.push_back(gate("mass_match", r.mass_match_gap, tol.mass_match * m));
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  return r;
}

std::vector<TransparencyReport> rank_pairs(int n, const MediumParams& params,
                                           modes::PairPolicy policy,
                                           const Tolerances& tolerances) {
  const auto pairs = modes::enumerate_mode_pairs(n, params, policy);
  std::vector<TransparencyReport> out;
  out.reserve(pairs.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : pairs) {
    out.push_back(evaluate_pair(p, params, tolerances));
    lo = std::min(lo, out.back().pair_frequency);
    hi = std::max(hi, out.back().pair_frequency);
  }
  for (auto& r : out) {
    r.pairs_considered = static_cast<int>(pairs.size());
    r.pair_frequency_spread = hi - lo;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.node_on_orbit != b.node_on_orbit) return b.node_on_orbit;
    if (a.debroglie_omega_residual != b.debroglie_omega_residual) {
      return a.debroglie_omega_residual < b.debroglie_omega_residual;
    }
    return a.guidance_field_residual < b.guidance_field_residual;
  });
  return out;
}

std::vector<TransparencyReport> landau_match_report(int n_max, const MediumParams& params,
                                                    const Tolerances& tolerances,
                                                    modes::PairPolicy policy) {
  if (n_max < 1) throw InvalidParams("landau_match_report: n_max must be >= 1");
  std::vector<int> ns(static_cast<std::size_t>(n_max));
  for (int i = 0; i < n_max; ++i) ns[i] = i + 1;
  return landau_match_report(ns, params, tolerances, policy);
}

std::vector<TransparencyReport> landau_match_report(std::span<const int> n_list,
                                                    const MediumParams& params,
                                                    const Tolerances& tolerances,
                                                    modes::PairPolicy policy) {
  std::vector<TransparencyReport> out;
  out.reserve(n_list.size());
  for (int n : n_list) out.push_back(rank_pairs(n, params, policy, tolerances).front());
  return out;
}

}  // namespace pilotwave::transparency
