#pragma once

// Separated solutions of the gauged Klein-Gordon equation in a uniform field
//
//   -d_t^2 u + lap u - i e B d_phi u - (e B rho / 2)^2 u = omega0^2 u
//
// u = R(rho) exp[i (k_z z + m phi - omega t)], with xi = -e B rho^2 / 2 and
// R = C e^{-xi/2} xi^{|m|/2} 1F1(-n_rho, |m| + 1, xi).

#include <complex>
#include <vector>

#include "pilotwave/medium.hpp"

namespace pilotwave::modes {

using Complex = std::complex<double>;

struct ModeIndex {
  int m = 0;
  int n_rho = 0;
  double k_z = 0.0;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

struct SpacetimePoint {
  double t = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

struct FieldMode {
  ModeIndex index;
  double omega = 0.0;
  double amplitude = 1.0;  // C in the radial profile
  MediumParams params;
};

/// Two counterpropagating modes u = c_plus u_plus + c_minus u_minus.
struct ModePair {
  FieldMode plus;
  FieldMode minus;
  double c_plus = 0.5;
  double c_minus = 0.5;

  /// (m_plus - m_minus) / 2; requires an even difference.
  [[nodiscard]] int n() const;
  /// -m_minus == n_rho_plus + n_rho_minus + 1 with k_z = 0 on both members.
  [[nodiscard]] bool matched() const;
};

enum class PairPolicy { strict, permissive };

/// omega^2 = omega0^2 - 2 e B (n_rho + (|m| + m + 1) / 2) + k_z^2
[[nodiscard]] double mode_frequency(const ModeIndex& index, const MediumParams& params);

/// -e B rho^2 / 2, nonnegative for e < 0 and B >= 0.
[[nodiscard]] double radial_variable(const MediumParams& params, double rho);

/// Radius where xi = 1.
[[nodiscard]] double magnetic_length(const MediumParams& params);

/// max over xi >= 0 of |e^{-xi/2} xi^{|m|/2} 1F1(-n_rho, |m|+1, xi)|.
[[nodiscard]] double profile_peak(int m, int n_rho);

/// Mode with C chosen so that max |R| = 1.
[[nodiscard]] FieldMode make_mode(const ModeIndex& index, const MediumParams& params);
[[nodiscard]] FieldMode make_mode(const ModeIndex& index, const MediumParams& params,
                                  double amplitude);

[[nodiscard]] double radial_profile(const FieldMode& mode, double rho);

[[nodiscard]] Complex evaluate_mode(const FieldMode& mode, const SpacetimePoint& p);

[[nodiscard]] ModePair make_pair(const ModeIndex& plus, const ModeIndex& minus,
                                 const MediumParams& params, double u0 = 1.0);

[[nodiscard]] Complex superpose_pair(const ModePair& pair, const SpacetimePoint& p);

/// |R| / C below this counts as a radial node.
inline constexpr double kNodeTolerance = 1e-12;

/// Rescale the pair weights so that both members have on-circle amplitude
/// u0 / 2 at radius rho. Throws InvalidParams if a member sits on a node there.
[[nodiscard]] ModePair equalize_on_circle(const ModePair& pair, double rho, double u0 = 1.0);

/// Every k_z = 0 index tuple with
///   n = (m_plus - m_minus) / 2 = (n_rho_plus + n_rho_minus + m_plus + 1) / 2,
/// i.e. -m_minus = n_rho_plus + n_rho_minus + 1 and m_plus = 2n + m_minus.
/// Strict keeps m_plus >= 1, permissive also m_plus = 0. Sorted by -m_minus,
/// then n_rho_plus. Throws EmptySet for n < 1.
[[nodiscard]] std::vector<ModePair> enumerate_mode_pairs(int n, const MediumParams& params,
                                                         PairPolicy policy = PairPolicy::strict,
                                                         double u0 = 1.0);

/// Lowest radial excitation of the strict set: n_rho = 0 on both, m_minus = -1.
[[nodiscard]] ModePair canonical_pair(int n, const MediumParams& params, double u0 = 1.0);

/// (omega_plus + omega_minus) / 2
[[nodiscard]] double pair_frequency(const ModePair& pair);

/// omega0 + n |e| B / omega0, the Landau formula with m_eff = omega0.
[[nodiscard]] double weak_field_frequency(int n, const MediumParams& params);

inline constexpr double kWeakFieldThreshold = 0.1;

/// -e B / omega0^2; the weak-field expansion is trusted below kWeakFieldThreshold.
[[nodiscard]] double weak_field_ratio(const MediumParams& params);

}  // namespace pilotwave::modes
