#pragma once

// Real-argument confluent hypergeometric kernel.
//
//   1F1(a, b, x) = sum_k (a)_k / (b)_k * x^k / k!
//   L_n^alpha(x) = C(n + alpha, n) * 1F1(-n, alpha + 1, x)
//   M_{kappa,mu}(z) = e^{-z/2} z^{mu + 1/2} 1F1(mu - kappa + 1/2, 1 + 2 mu, z)

namespace pilotwave::specfun {

struct SeriesPolicy {
  int max_terms = 500;
  double rel_tol = 1e-14;

  void validate() const;
};

/// Confluent hypergeometric function of the first kind.
///
/// A nonpositive integer `a` makes the series a polynomial; it is summed to
/// its exact degree with no truncation test. Otherwise the series is summed
/// until the tail bound drops below `policy.rel_tol`, after mapping negative
/// arguments through Kummer's transformation.
///
/// Throws PoleError when b is a nonpositive integer not cancelled by a
/// terminating numerator, NonConvergence when `policy.max_terms` is reached.
[[nodiscard]] double confluent_1f1(double a, double b, double x,
                                   const SeriesPolicy& policy = {});

/// Generalised Laguerre polynomial by the three-term recurrence.
[[nodiscard]] double laguerre(int n, double alpha, double x);

/// Whittaker M function for z > 0.
[[nodiscard]] double whittaker_m(double kappa, double mu, double z,
                                 const SeriesPolicy& policy = {});

/// True when v is a nonpositive integer (0, -1, -2, ...).
[[nodiscard]] bool is_nonpositive_integer(double v);

}  // namespace pilotwave::specfun
