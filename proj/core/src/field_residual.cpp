#include "pilotwave/field_residual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "pilotwave/errors.hpp"

namespace pilotwave::numerics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Vector potential in physical cylindrical components.
struct Potential {
  std::function<double(double, double)> a_rho;
  std::function<double(double, double)> a_phi;
  std::function<double(double, double)> divergence;
};

Potential symmetric_gauge(double B) {
  return {[](double, double) { return 0.0; },
          [B](double rho, double) { return symmetric_gauge_potential(B, rho); },
          [](double, double) { return 0.0; }};
}

struct ResidualField {
  std::vector<Complex> values;  // interior rows 1..n_rho-2, row-major in phi
  std::vector<Complex> centre;  // field at the same points
  double scale = 0.0;           // omega0^2 max|u| over the whole grid
};

double rho_at(const Grid2D& g, int i) { return g.rho_min + i * g.h_rho(); }
double phi_at(const Grid2D& g, int j) { return j * g.h_phi(); }

std::vector<Complex> sample(const Field& u, const Grid2D& g, double t, double z) {
  std::vector<Complex> out(static_cast<std::size_t>(g.n_rho_pts) * g.n_phi_pts);
  for (int i = 0; i < g.n_rho_pts; ++i) {
    for (int j = 0; j < g.n_phi_pts; ++j) {
      out[static_cast<std::size_t>(i) * g.n_phi_pts + j] = u({t, rho_at(g, i), phi_at(g, j), z});
    }
  }
  return out;
}

double time_step(const MediumParams& params, const Grid2D& g, const ResidualOptions& opt) {
  if (opt.t_step > 0.0) return opt.t_step;
  return kTwoPi / params.omega0 * g.h_rho() / (g.rho_max - g.rho_min);
}

// -u_tt + (grad - i e A)^2 u - omega0^2 u, expanded as
// lap u - i e (div A) u - 2 i e A.grad u - e^2 |A|^2 u.
ResidualField residual_field(const Field& u, const Potential& A, const MediumParams& params,
                             const Grid2D& g, double t, const ResidualOptions& opt) {
  g.validate();
  const int nr = g.n_rho_pts;
  const int np = g.n_phi_pts;
  const double hr = g.h_rho();
  const double hp = g.h_phi();
  const double hz = hr;
  const double e = params.e;
  const double w0sq = params.omega0 * params.omega0;

  const auto u0 = sample(u, g, t, 0.0);
  const auto uzp = sample(u, g, t, hz);
  const auto uzm = sample(u, g, t, -hz);
  std::vector<Complex> utp;
  std::vector<Complex> utm;
  double ht = 0.0;
  if (opt.time == TimeDerivative::three_slice) {
    ht = time_step(params, g, opt);
    utp = sample(u, g, t + ht, 0.0);
    utm = sample(u, g, t - ht, 0.0);
  }

  auto at = [np](const std::vector<Complex>& v, int i, int j) {
    return v[static_cast<std::size_t>(i) * np + ((j % np) + np) % np];
  };

  ResidualField out;
  for (const Complex& c : u0) out.scale = std::max(out.scale, std::abs(c));
  out.scale *= w0sq;
  out.values.reserve(static_cast<std::size_t>(nr - 2) * np);
  out.centre.reserve(out.values.capacity());

  for (int i = 1; i < nr - 1; ++i) {
    const double rho = rho_at(g, i);
    for (int j = 0; j < np; ++j) {
      const double phi = phi_at(g, j);
      const Complex c = at(u0, i, j);
      const Complex u_r = (at(u0, i + 1, j) - at(u0, i - 1, j)) / (2.0 * hr);
      const Complex u_rr = (at(u0, i + 1, j) - 2.0 * c + at(u0, i - 1, j)) / (hr * hr);
      const Complex u_p = (at(u0, i, j + 1) - at(u0, i, j - 1)) / (2.0 * hp);
      const Complex u_pp = (at(u0, i, j + 1) - 2.0 * c + at(u0, i, j - 1)) / (hp * hp);
      const Complex u_zz = (at(uzp, i, j) - 2.0 * c + at(uzm, i, j)) / (hz * hz);
      Complex u_tt;
      if (opt.time == TimeDerivative::three_slice) {
        u_tt = (at(utp, i, j) - 2.0 * c + at(utm, i, j)) / (ht * ht);
      } else {
        u_tt = -opt.omega * opt.omega * c;
      }
      const double ar = A.a_rho(rho, phi);
      const double ap = A.a_phi(rho, phi);
      const Complex lap = u_rr + u_r / rho + u_pp / (rho * rho) + u_zz;
      const Complex r = -u_tt + lap - kI * e * A.divergence(rho, phi) * c -
                        2.0 * kI * e * (ar * u_r + ap * u_p / rho) -
                        e * e * (ar * ar + ap * ap) * c - w0sq * c;
      out.values.push_back(r);
      out.centre.push_back(c);
    }
  }
  return out;
}

ResidualNorms norms_of(const std::vector<Complex>& r, double scale) {
  if (scale == 0.0 || r.empty()) return {};
  double mx = 0.0;
  double sq = 0.0;
  for (const Complex& v : r) {
    const double a = std::abs(v);
    mx = std::max(mx, a);
    sq += a * a;
  }
  return {mx / scale, std::sqrt(sq / static_cast<double>(r.size())) / scale};
}

}  // namespace

double Grid2D::h_rho() const { return (rho_max - rho_min) / (n_rho_pts - 1); }
double Grid2D::h_phi() const { return kTwoPi / n_phi_pts; }

Grid2D Grid2D::refined() const {
  return {rho_min, rho_max, 2 * (n_rho_pts - 1) + 1, 2 * n_phi_pts};
}

void Grid2D::validate() const {
  if (!(rho_min > 0.0)) throw InvalidParams("Grid2D: rho_min must be positive");
  if (!(rho_max > rho_min)) throw InvalidParams("Grid2D: rho_max must exceed rho_min");
  if (n_rho_pts < 8 || n_phi_pts < 8) throw InvalidParams("Grid2D: need at least 8 points per axis");
}

ResidualNorms kg_residual(const Field& field, const MediumParams& params, const Grid2D& grid,
                          double t, const ResidualOptions& options) {
  const auto rf = residual_field(field, symmetric_gauge(params.B), params, grid, t, options);
  return norms_of(rf.values, rf.scale);
}

ConvergenceStudy kg_convergence(const Field& field, const MediumParams& params,
                                const Grid2D& grid, double t, const ResidualOptions& options,
                                int levels, std::optional<double> min_order) {
  if (levels < 2) throw InvalidParams("kg_convergence: need at least two levels");
  ConvergenceStudy study;
  Grid2D g = grid;
  for (int l = 0; l < levels; ++l) {
    study.grids.push_back(g);
    study.norms.push_back(kg_residual(field, params, g, t, options));
    g = g.refined();
  }
  study.slope_max = std::numeric_limits<double>::infinity();
  study.slope_l2 = std::numeric_limits<double>::infinity();
  for (int l = 1; l < levels; ++l) {
    const auto& a = study.norms[l - 1];
    const auto& b = study.norms[l];
    if (a.max_residual > 0.0) {
      study.slope_max = std::min(study.slope_max, std::log2(a.max_residual / b.max_residual));
    }
    if (a.l2_residual > 0.0) {
      study.slope_l2 = std::min(study.slope_l2, std::log2(a.l2_residual / b.l2_residual));
    }
  }
  if (min_order && study.slope_max < *min_order) {
    throw GridTooCoarse("kg_convergence: observed order " + std::to_string(study.slope_max) +
                        " below " + std::to_string(*min_order));
  }
  return study;
}

Grid2D default_grid(const modes::FieldMode& mode) {
  const double ell = modes::magnetic_length(mode.params);
  const int am = std::abs(mode.index.m);
  const double xi_max = 4.0 * (mode.index.n_rho + am + 2);
  return {0.3 * ell, ell * std::sqrt(xi_max), 32 * (mode.index.n_rho + 1) + 8 * am, 16 * (am + 1)};
}

GaugeFunction zero_gauge() {
  auto zero = [](double, double) { return 0.0; };
  return {zero, zero, zero, zero};
}

GaugeFunction radial_bump_gauge(double amplitude, double center, double width) {
  auto value = [=](double rho, double) {
    const double d = (rho - center) / width;
    return amplitude * std::exp(-d * d);
  };
  auto d_rho = [=](double rho, double phi) {
    return -2.0 * (rho - center) / (width * width) * value(rho, phi);
  };
  auto lap = [=](double rho, double phi) {
    const double d = rho - center;
    const double w2 = width * width;
    const double chi = value(rho, phi);
    const double second = (4.0 * d * d / (w2 * w2) - 2.0 / w2) * chi;
    return second + (-2.0 * d / w2 * chi) / rho;
  };
  return {value, d_rho, [](double, double) { return 0.0; }, lap};
}

GaugeFunction radial_quadratic_gauge(double amplitude, double scale) {
  const double s2 = scale * scale;
  return {[=](double rho, double) { return amplitude * rho * rho / s2; },
          [=](double rho, double) { return 2.0 * amplitude * rho / s2; },
          [](double, double) { return 0.0; },
          [=](double, double) { return 4.0 * amplitude / s2; }};
}

GaugeFunction angular_gauge(double amplitude, double scale) {
  const double s2 = scale * scale;
  return {[=](double rho, double phi) { return amplitude * rho * rho / s2 * std::sin(phi); },
          [=](double rho, double phi) { return 2.0 * amplitude * rho / s2 * std::sin(phi); },
          [=](double rho, double phi) { return amplitude * rho * rho / s2 * std::cos(phi); },
          [=](double, double phi) { return 3.0 * amplitude / s2 * std::sin(phi); }};
}

GaugeCheck gauge_covariance_check(const modes::FieldMode& mode, const GaugeFunction& chi,
                                  const Grid2D& grid, GaugeTransform transform) {
  const MediumParams& params = mode.params;
  const double e = params.e;
  ResidualOptions opt;
  opt.time = TimeDerivative::semi_analytic;
  opt.omega = mode.omega;

  const Field u = [&mode](const SpacetimePoint& p) { return modes::evaluate_mode(mode, p); };
  const auto base = residual_field(u, symmetric_gauge(params.B), params, grid, 0.0, opt);

  const Potential sym = symmetric_gauge(params.B);
  const Potential shifted{
      [&](double rho, double phi) { return sym.a_rho(rho, phi) - chi.d_rho(rho, phi); },
      [&](double rho, double phi) { return sym.a_phi(rho, phi) - chi.d_phi(rho, phi) / rho; },
      [&](double rho, double phi) { return sym.divergence(rho, phi) - chi.laplacian(rho, phi); }};

  Field u_shifted = u;
  if (transform == GaugeTransform::potential_and_field) {
    u_shifted = [&u, &chi, e](const SpacetimePoint& p) {
      return u(p) * std::polar(1.0, -e * chi.value(p.rho, p.phi));
    };
  }
  const auto moved = residual_field(u_shifted, shifted, params, grid, 0.0, opt);

  GaugeCheck out;
  out.floor = norms_of(base.values, base.scale).max_residual;
  if (base.scale == 0.0) return out;
  const double hr = grid.h_rho();
  const double hp = grid.h_phi();
  double worst = 0.0;
  std::size_t k = 0;
  for (int i = 1; i < grid.n_rho_pts - 1; ++i) {
    for (int j = 0; j < grid.n_phi_pts; ++j, ++k) {
      Complex back = moved.values[k];
      if (transform == GaugeTransform::potential_and_field) {
        back *= std::polar(1.0, e * chi.value(grid.rho_min + i * hr, j * hp));
      }
      worst = std::max(worst, std::abs(back - base.values[k]));
    }
  }
  out.difference = worst / base.scale;
  return out;
}

}  // namespace pilotwave::numerics
