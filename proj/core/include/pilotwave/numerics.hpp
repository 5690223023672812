#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pilotwave::numerics {

using Vector = std::vector<double>;
using Rhs = std::function<Vector(const Vector&)>;

/// Classical fourth-order Runge-Kutta step for an autonomous system y' = f(y).
[[nodiscard]] Vector rk4_step(const Vector& state, const Rhs& rhs, double h);

/// Largest |(f(x+h) - f(x-h)) / 2h - df(x)| over the given points.
[[nodiscard]] double finite_diff_check(const std::function<double(double)>& f,
                                       const std::function<double(double)>& df,
                                       std::span<const double> points, double h);

/// Observed order log2(e_coarse / e_fine) for a step-halving pair.
[[nodiscard]] double halving_order(double coarse_error, double fine_error);

}  // namespace pilotwave::numerics
