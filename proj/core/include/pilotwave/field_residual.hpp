#pragma once

// Finite-difference verification of fields against the gauged Klein-Gordon
// operator on a polar (rho, phi) grid that excludes the axis.

#include <functional>
#include <optional>
#include <vector>

#include "pilotwave/medium.hpp"
#include "pilotwave/modes.hpp"

namespace pilotwave::numerics {

using modes::Complex;
using modes::SpacetimePoint;
using Field = std::function<Complex(const SpacetimePoint&)>;

struct Grid2D {
  double rho_min = 0.0;
  double rho_max = 0.0;
  int n_rho_pts = 8;
  int n_phi_pts = 8;

  [[nodiscard]] double h_rho() const;
  [[nodiscard]] double h_phi() const;
  /// Same extent with both spacings halved.
  [[nodiscard]] Grid2D refined() const;
  void validate() const;
};

enum class TimeDerivative {
  three_slice,    // (u(t-h) - 2u(t) + u(t+h)) / h^2
  semi_analytic,  // -omega^2 u, monochromatic fields only
};

struct ResidualOptions {
  TimeDerivative time = TimeDerivative::three_slice;
  double omega = 0.0;   // used by semi_analytic
  double t_step = 0.0;  // 0: period(omega0) * h_rho / (rho_max - rho_min)
};

/// Residual norms relative to omega0^2 max|u| over the grid.
struct ResidualNorms {
  double max_residual = 0.0;
  double l2_residual = 0.0;  // root mean square over interior points
};

/// Second-order central differences of the gauged operator applied to `field`
/// at time t (z = 0).
[[nodiscard]] ResidualNorms kg_residual(const Field& field, const MediumParams& params,
                                        const Grid2D& grid, double t,
                                        const ResidualOptions& options = {});

struct ConvergenceStudy {
  std::vector<Grid2D> grids;
  std::vector<ResidualNorms> norms;
  double slope_max = 0.0;  // smallest log2 ratio over consecutive levels, inf if exact
  double slope_l2 = 0.0;
};

/// kg_residual on `levels` successively halved grids. Throws GridTooCoarse
/// when `min_order` is given and the max-norm slope falls below it.
[[nodiscard]] ConvergenceStudy kg_convergence(const Field& field, const MediumParams& params,
                                              const Grid2D& grid, double t,
                                              const ResidualOptions& options = {},
                                              int levels = 3,
                                              std::optional<double> min_order = std::nullopt);

/// Grid covering a mode's radial structure: rho from 0.3 l_B out to
/// xi = 4 (n_rho + |m| + 2), with enough azimuthal points to resolve m.
[[nodiscard]] Grid2D default_grid(const modes::FieldMode& mode);

/// Static real gauge function chi(rho, phi) with its derivatives.
/// d_phi is the coordinate derivative d chi / d phi.
struct GaugeFunction {
  std::function<double(double, double)> value;
  std::function<double(double, double)> d_rho;
  std::function<double(double, double)> d_phi;
  std::function<double(double, double)> laplacian;
};

[[nodiscard]] GaugeFunction zero_gauge();
[[nodiscard]] GaugeFunction radial_bump_gauge(double amplitude, double center, double width);
[[nodiscard]] GaugeFunction radial_quadratic_gauge(double amplitude, double scale);
[[nodiscard]] GaugeFunction angular_gauge(double amplitude, double scale);

enum class GaugeTransform {
  potential_and_field,  // A -> A - grad chi, u -> u e^{-i e chi}
  potential_only,       // negative control
};

struct GaugeCheck {
  double difference = 0.0;  // max |r' e^{i e chi} - r| / (omega0^2 max|u|)
  double floor = 0.0;       // max residual of the untransformed pair
};

/// Residual of the transformed pair under the transformed operator against
/// the untransformed one. Time derivatives are semi-analytic (chi is static).
[[nodiscard]] GaugeCheck gauge_covariance_check(
    const modes::FieldMode& mode, const GaugeFunction& chi, const Grid2D& grid,
    GaugeTransform transform = GaugeTransform::potential_and_field);

}  // namespace pilotwave::numerics
