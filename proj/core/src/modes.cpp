#include "pilotwave/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "pilotwave/errors.hpp"
#include "pilotwave/specfun.hpp"

namespace pilotwave::modes {

namespace {

double unit_profile(int m, int n_rho, double xi) {
  const int am = std::abs(m);
  return std::exp(-0.5 * xi) * std::pow(xi, 0.5 * am) *
         specfun::confluent_1f1(-static_cast<double>(n_rho), am + 1.0, xi);
}

}  // namespace

int ModePair::n() const {
  const int diff = plus.index.m - minus.index.m;
  if (diff % 2 != 0) throw InvalidParams("ModePair: m_plus - m_minus must be even");
  return diff / 2;
}

bool ModePair::matched() const {
  return plus.index.k_z == 0.0 && minus.index.k_z == 0.0 &&
         (plus.index.m - minus.index.m) % 2 == 0 &&
         -minus.index.m == plus.index.n_rho + minus.index.n_rho + 1;
}

double mode_frequency(const ModeIndex& index, const MediumParams& params) {
  if (index.n_rho < 0) throw InvalidParams("mode_frequency: n_rho must be nonnegative");
  const double level = index.n_rho + 0.5 * (std::abs(index.m) + index.m + 1);
  return std::sqrt(params.omega0 * params.omega0 - 2.0 * params.e * params.B * level +
                   index.k_z * index.k_z);
}

double radial_variable(const MediumParams& params, double rho) {
  const double xi = -0.5 * params.e * params.B * rho * rho;
  if (!(xi >= 0.0)) throw InvalidParams("radial_variable: xi must be nonnegative");
  return xi;
}

double magnetic_length(const MediumParams& params) {
  if (!(params.B > 0.0)) throw InvalidParams("magnetic_length: needs B > 0");
  return std::sqrt(-2.0 / (params.e * params.B));
}

double profile_peak(int m, int n_rho) {
  if (n_rho < 0) throw InvalidParams("profile_peak: n_rho must be nonnegative");
  if (m == 0 && n_rho == 0) return 1.0;
  // Every lobe lies below the decay scale of the highest-degree term.
  const double xi_max = 4.0 * (n_rho + std::abs(m) + 2) + 20.0;
  constexpr int kScan = 4000;
  const double dxi = xi_max / kScan;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i <= kScan; ++i) {
    const double v = std::fabs(unit_profile(m, n_rho, i * dxi));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1) * dxi);
  const double hi = std::min(xi_max, (best + 1) * dxi);
  const auto [xi_star, neg] = boost::math::tools::brent_find_minima(
      [&](double xi) { return -std::fabs(unit_profile(m, n_rho, xi)); }, lo, hi, 52);
  return std::max(best_val, -neg);
}

FieldMode make_mode(const ModeIndex& index, const MediumParams& params) {
  return make_mode(index, params, 1.0 / profile_peak(index.m, index.n_rho));
}

FieldMode make_mode(const ModeIndex& index, const MediumParams& params, double amplitude) {
  if (index.n_rho < 0) throw InvalidParams("make_mode: n_rho must be nonnegative");
  FieldMode mode;
  mode.index = index;
  mode.params = params;
  mode.amplitude = amplitude;
  mode.omega = mode_frequency(index, params);
  return mode;
}

double radial_profile(const FieldMode& mode, double rho) {
  if (!(rho >= 0.0)) throw InvalidParams("radial_profile: rho must be nonnegative");
  const double xi = radial_variable(mode.params, rho);
  return mode.amplitude * unit_profile(mode.index.m, mode.index.n_rho, xi);
}

Complex evaluate_mode(const FieldMode& mode, const SpacetimePoint& p) {
  const double phase = mode.index.k_z * p.z + mode.index.m * p.phi - mode.omega * p.t;
  return radial_profile(mode, p.rho) * std::polar(1.0, phase);
}

ModePair make_pair(const ModeIndex& plus, const ModeIndex& minus, const MediumParams& params,
                   double u0) {
  ModePair pair;
  pair.plus = make_mode(plus, params);
  pair.minus = make_mode(minus, params);
  pair.c_plus = 0.5 * u0;
  pair.c_minus = 0.5 * u0;
  return pair;
}

Complex superpose_pair(const ModePair& pair, const SpacetimePoint& p) {
  return pair.c_plus * evaluate_mode(pair.plus, p) + pair.c_minus * evaluate_mode(pair.minus, p);
}

ModePair equalize_on_circle(const ModePair& pair, double rho, double u0) {
  const double rp = radial_profile(pair.plus, rho);
  const double rm = radial_profile(pair.minus, rho);
  if (std::fabs(rp) <= kNodeTolerance * pair.plus.amplitude ||
      std::fabs(rm) <= kNodeTolerance * pair.minus.amplitude) {
    throw InvalidParams("equalize_on_circle: a member vanishes at rho = " + std::to_string(rho));
  }
  ModePair out = pair;
  out.c_plus = 0.5 * u0 / rp;
  out.c_minus = 0.5 * u0 / rm;
  return out;
}

std::vector<ModePair> enumerate_mode_pairs(int n, const MediumParams& params, PairPolicy policy,
                                           double u0) {
  if (n < 1) throw EmptySet("enumerate_mode_pairs: n must be >= 1");
  const int max_minus = policy == PairPolicy::strict ? 2 * n - 1 : 2 * n;
  std::vector<ModePair> out;
  for (int neg_m_minus = 1; neg_m_minus <= max_minus; ++neg_m_minus) {
    const int m_minus = -neg_m_minus;
    const int m_plus = 2 * n + m_minus;
    const int radial_sum = neg_m_minus - 1;
    for (int nr_plus = 0; nr_plus <= radial_sum; ++nr_plus) {
      out.push_back(make_pair({m_plus, nr_plus, 0.0}, {m_minus, radial_sum - nr_plus, 0.0},
                              params, u0));
    }
  }
  return out;
}

ModePair canonical_pair(int n, const MediumParams& params, double u0) {
  if (n < 1) throw EmptySet("canonical_pair: n must be >= 1");
  return make_pair({2 * n - 1, 0, 0.0}, {-1, 0, 0.0}, params, u0);
}

double pair_frequency(const ModePair& pair) {
  return 0.5 * (pair.plus.omega + pair.minus.omega);
}

double weak_field_frequency(int n, const MediumParams& params) {
  if (n < 0) throw InvalidParams("weak_field_frequency: n must be nonnegative");
  return params.omega0 - params.e * params.B / params.omega0 * n;
}

double weak_field_ratio(const MediumParams& params) {
  return -params.e * params.B / (params.omega0 * params.omega0);
}

}  // namespace pilotwave::modes
