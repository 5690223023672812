#include "pilotwave/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "pilotwave/errors.hpp"

namespace pilotwave::numerics {

namespace {

Vector axpy(const Vector& y, double a, const Vector& k) {
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

}  // namespace

Vector rk4_step(const Vector& state, const Rhs& rhs, double h) {
  if (!(h > 0.0)) throw InvalidParams("rk4_step: step must be positive");
  const Vector k1 = rhs(state);
  const Vector k2 = rhs(axpy(state, 0.5 * h, k1));
  const Vector k3 = rhs(axpy(state, 0.5 * h, k2));
  const Vector k4 = rhs(axpy(state, h, k3));
  Vector out(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    out[i] = state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

double finite_diff_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& df,
                         std::span<const double> points, double h) {
  if (!(h > 0.0)) throw InvalidParams("finite_diff_check: h must be positive");
  double worst = 0.0;
  for (double x : points) {
    const double central = (f(x + h) - f(x - h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(central - df(x)));
  }
  return worst;
}

double halving_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

}  // namespace pilotwave::numerics
