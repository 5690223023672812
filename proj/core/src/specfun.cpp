#include "pilotwave/specfun.hpp"

#include <cmath>
#include <string>

#include "pilotwave/errors.hpp"

namespace pilotwave::specfun {

void SeriesPolicy::validate() const {
  if (max_terms < 1) throw InvalidParams("SeriesPolicy: max_terms must be >= 1");
  if (!(rel_tol > 0.0)) throw InvalidParams("SeriesPolicy: rel_tol must be > 0");
}

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::floor(v) == v;
}

namespace {

// Exact polynomial for a = -n. Terms are generated in order k = 0..n and
// accumulated in extended precision.
double terminating_sum(int degree, double a, double b, double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 0; k < degree; ++k) {
    term *= static_cast<long double>(a + k) * x /
            (static_cast<long double>(b + k) * (k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

double series_sum(double a, double b, double x, const SeriesPolicy& policy) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 0; k < policy.max_terms; ++k) {
    const long double ratio = static_cast<long double>(a + k) * x /
                              (static_cast<long double>(b + k) * (k + 1));
    term *= ratio;
    sum += term;
    // Once the term ratio is below one it keeps shrinking, so the tail is
    // bounded by a geometric series with the next ratio.
    const long double next = std::fabs(static_cast<long double>(a + k + 1) * x /
                                       (static_cast<long double>(b + k + 1) * (k + 2)));
    if (next < 1.0L) {
      const long double tail = std::fabs(term) * next / (1.0L - next);
      if (tail <= policy.rel_tol * std::fabs(sum) || term == 0.0L) {
        return static_cast<double>(sum);
      }
    }
  }
  throw NonConvergence("confluent_1f1: series did not converge within " +
                       std::to_string(policy.max_terms) + " terms");
}

}  // namespace

double confluent_1f1(double a, double b, double x, const SeriesPolicy& policy) {
  policy.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x)) {
    throw InvalidParams("confluent_1f1: non-finite argument");
  }
  if (is_nonpositive_integer(b) &&
      !(is_nonpositive_integer(a) && -a <= -b)) {
    throw PoleError("confluent_1f1: b = " + std::to_string(b) +
                    " is a pole not cancelled by a = " + std::to_string(a));
  }
  if (x == 0.0 || a == 0.0) return 1.0;

  if (is_nonpositive_integer(a)) {
    return terminating_sum(static_cast<int>(-a), a, b, x);
  }

  if (x < 0.0) {
    // Kummer: 1F1(a, b, x) = e^x 1F1(b - a, b, -x).
    const double a2 = b - a;
    if (a2 == 0.0) return std::exp(x);
    if (is_nonpositive_integer(a2)) {
      return std::exp(x) * terminating_sum(static_cast<int>(-a2), a2, b, -x);
    }
    return std::exp(x) * series_sum(a2, b, -x, policy);
  }
  return series_sum(a, b, x, policy);
}

double laguerre(int n, double alpha, double x) {
  if (n < 0) throw InvalidParams("laguerre: n must be nonnegative");
  long double prev = 1.0L;
  if (n == 0) return 1.0;
  long double cur = 1.0L + alpha - x;
  for (int k = 1; k < n; ++k) {
    const long double next =
        ((2.0L * k + 1.0L + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0L);
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

double whittaker_m(double kappa, double mu, double z, const SeriesPolicy& policy) {
  if (!(z > 0.0)) throw InvalidParams("whittaker_m: z must be positive");
  const double b = 1.0 + 2.0 * mu;
  const double a = mu - kappa + 0.5;
  return std::exp(-0.5 * z) * std::pow(z, mu + 0.5) * confluent_1f1(a, b, z, policy);
}

}  // namespace pilotwave::specfun
