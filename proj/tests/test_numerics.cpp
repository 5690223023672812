#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pilotwave/errors.hpp"
#include "pilotwave/field_residual.hpp"
#include "pilotwave/modes.hpp"
#include "pilotwave/numerics.hpp"
#include "pilotwave/specfun.hpp"

using namespace pilotwave;
using namespace pilotwave::numerics;
using std::numbers::pi;

namespace {

MediumParams field(double B, double omega0 = 1.0) {
  return MediumParams::with_effective_mass(-1.0, B, omega0, omega0);
}

Field as_field(const modes::FieldMode& mode) {
  return [mode](const SpacetimePoint& p) { return modes::evaluate_mode(mode, p); };
}

Vector oscillator(const Vector& y) { return {y[1], -y[0]}; }

double integrate_oscillator(double h, double t_end) {
  Vector y{1.0, 0.0};
  const int steps = static_cast<int>(std::lround(t_end / h));
  for (int i = 0; i < steps; ++i) y = rk4_step(y, oscillator, h);
  return std::hypot(y[0] - std::cos(t_end), y[1] + std::sin(t_end));
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("rk4 worked values") {
  const Vector s{1.5, -2.0, 0.25};
  CHECK(rk4_step(s, [](const Vector& y) { return Vector(y.size(), 0.0); }, 0.3) == s);
  const Vector e = rk4_step({1.0}, [](const Vector& y) { return y; }, 0.1);
  CHECK(e[0] == doctest::Approx(1.10517083).epsilon(1e-8));
  CHECK(std::fabs(e[0] - std::exp(0.1)) < 1e-7);
  CHECK_THROWS_AS((void)rk4_step({1.0}, oscillator, 0.0), InvalidParams);
}

TEST_CASE("rk4 conserves oscillator energy over a period") {
  Vector y{1.0, 0.0};
  const double h = 2 * pi / 1000;
  for (int i = 0; i < 1000; ++i) y = rk4_step(y, oscillator, h);
  CHECK(std::fabs(y[0] * y[0] + y[1] * y[1] - 1.0) < 1e-10);
}

TEST_CASE("rk4 order on a halving ladder") {
  const double e1 = integrate_oscillator(0.1, 2.0);
  const double e2 = integrate_oscillator(0.05, 2.0);
  const double e3 = integrate_oscillator(0.025, 2.0);
  CHECK(halving_order(e1, e2) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(halving_order(e2, e3) == doctest::Approx(4.0).epsilon(0.05));
  auto exp_error = [](double h) {
    Vector y{1.0};
    for (int i = 0; i < static_cast<int>(std::lround(1.0 / h)); ++i)
      y = rk4_step(y, [](const Vector& v) { return v; }, h);
    return std::fabs(y[0] - std::exp(1.0));
  };
  CHECK(halving_order(exp_error(0.1), exp_error(0.05)) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("finite difference check") {
  const std::vector<double> pts{-2.0, -0.3, 0.0, 1.1, 4.0};
  CHECK(finite_diff_check([](double) { return 3.0; }, [](double) { return 0.0; }, pts, 0.1) == 0.0);
  CHECK(finite_diff_check([](double x) { return x * x; }, [](double x) { return 2 * x; }, pts, 0.1) <= 1e-14);
  auto f = [](double x) { return specfun::confluent_1f1(-2, 1, x); };
  auto df = [](double x) { return -2.0 * specfun::confluent_1f1(-1, 2, x); };
  // Quadratic, so the stencil is exact here too.
  CHECK(finite_diff_check(f, df, pts, 0.1) <= 1e-13);
  auto g = [](double x) { return specfun::confluent_1f1(-2.5, 1, x); };
  auto dg = [](double x) { return -2.5 * specfun::confluent_1f1(-1.5, 2, x); };
  CHECK(halving_order(finite_diff_check(g, dg, pts, 0.02), finite_diff_check(g, dg, pts, 0.01)) ==
        doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid2D({0.0, 1.0, 8, 8}).validate(), InvalidParams);
  CHECK_THROWS_AS(Grid2D({1.0, 0.5, 8, 8}).validate(), InvalidParams);
  CHECK_THROWS_AS(Grid2D({0.1, 1.0, 7, 8}).validate(), InvalidParams);
  CHECK_THROWS_AS(Grid2D({0.1, 1.0, 8, 4}).validate(), InvalidParams);
  const Grid2D g{0.5, 2.5, 10, 16};
  const Grid2D r = g.refined();
  CHECK(r.h_rho() == doctest::Approx(g.h_rho() / 2));
  CHECK(r.h_phi() == doctest::Approx(g.h_phi() / 2));
  CHECK(r.rho_min == g.rho_min);
  CHECK(r.rho_max == g.rho_max);
}

TEST_CASE("zero field has zero residual") {
  const auto p = field(0.1);
  const auto norms = kg_residual([](const SpacetimePoint&) { return Complex{}; }, p, {0.5, 3.0, 16, 16}, 0.0);
  CHECK(norms.max_residual == 0.0);
  CHECK(norms.l2_residual == 0.0);
}

TEST_CASE("analytic modes converge at second order") {
  for (double B : {0.05, 0.4}) {
    const auto p = field(B);
    for (int m : {-2, -1, 0, 1, 3}) {
      for (int n_rho : {0, 1, 2}) {
        const auto mode = modes::make_mode({m, n_rho, 0.0}, p);
        const auto study = kg_convergence(as_field(mode), p, default_grid(mode), 0.37);
        CAPTURE(B);
        CAPTURE(m);
        CAPTURE(n_rho);
        CHECK(study.slope_max >= 1.9);
        CHECK(study.slope_l2 >= 1.9);
        // Two halvings: roughly 16x.
        const double reduction = study.norms[0].max_residual / study.norms[2].max_residual;
        CHECK(reduction >= 14.0);
        CHECK(reduction <= 18.5);
      }
    }
  }
}

TEST_CASE("three-slice and semi-analytic time derivatives agree") {
  const auto p = field(0.1);
  const auto mode = modes::make_mode({1, 1, 0.0}, p);
  const Grid2D g = default_grid(mode);
  ResidualOptions semi;
  semi.time = TimeDerivative::semi_analytic;
  semi.omega = mode.omega;
  const auto a = kg_convergence(as_field(mode), p, g, 1.0);
  const auto b = kg_convergence(as_field(mode), p, g, 1.0, semi);
  CHECK(b.slope_max >= 1.9);
  for (std::size_t i = 0; i < a.norms.size(); ++i) {
    CHECK(a.norms[i].max_residual == doctest::Approx(b.norms[i].max_residual).epsilon(0.2));
  }
}

TEST_CASE("perturbed frequency leaves a plateau") {
  const auto p = field(0.1);
  auto mode = modes::make_mode({0, 0, 0.0}, p);
  const Grid2D g = default_grid(mode);
  const auto good = kg_convergence(as_field(mode), p, g, 0.0);
  mode.omega *= 1.01;
  const auto bad = kg_convergence(as_field(mode), p, g, 0.0);
  CHECK(bad.slope_max < 0.5);
  CHECK(bad.norms.back().max_residual > 50.0 * good.norms.back().max_residual);
  CHECK(bad.norms.back().max_residual > 0.5 * bad.norms.front().max_residual);
  CHECK_THROWS_AS((void)kg_convergence(as_field(mode), p, g, 0.0, {}, 3, 1.5), GridTooCoarse);
  CHECK_NOTHROW((void)kg_convergence(as_field(modes::make_mode({0, 0, 0.0}, p)), p, g, 0.0, {}, 3, 1.5));
}

TEST_CASE("gauge covariance") {
  const auto p = field(0.1);
  const auto mode = modes::make_mode({1, 0, 0.0}, p);
  const Grid2D g = default_grid(mode);
  CHECK(gauge_covariance_check(mode, zero_gauge(), g).difference == 0.0);
  const double mid = 0.5 * (g.rho_min + g.rho_max);
  const double span = g.rho_max - g.rho_min;
  const std::vector<GaugeFunction> chis{
      radial_bump_gauge(0.1, mid, 0.25 * span),
      radial_quadratic_gauge(0.3, span),
      angular_gauge(0.2, span),
  };
  for (const auto& chi : chis) {
    const GaugeCheck c = gauge_covariance_check(mode, chi, g);
    CHECK(c.floor > 0.0);
    CHECK(c.difference < 5.0 * c.floor);
    // The difference itself is a discretization artefact and shrinks with h.
    const GaugeCheck fine = gauge_covariance_check(mode, chi, g.refined());
    CHECK(fine.difference < c.difference);
    // Transforming only the potential leaves a mismatch that refinement does not remove.
    const GaugeCheck wrong = gauge_covariance_check(mode, chi, g, GaugeTransform::potential_only);
    const GaugeCheck wrong_fine = gauge_covariance_check(mode, chi, g.refined(), GaugeTransform::potential_only);
    CHECK(wrong.difference > 1e-3);
    CHECK(wrong.difference > 20.0 * c.difference);
    CHECK(wrong_fine.difference > 0.9 * wrong.difference);
  }
}

TEST_CASE("gauge function derivatives are consistent") {
  const std::vector<GaugeFunction> chis{radial_bump_gauge(0.1, 3.0, 1.0), radial_quadratic_gauge(0.3, 4.0),
                                        angular_gauge(0.2, 4.0)};
  const double h = 1e-4;
  for (const auto& chi : chis) {
    for (double rho : {1.0, 2.7, 4.2}) {
      for (double phi : {0.3, 2.0, 5.1}) {
        const double d_rho = (chi.value(rho + h, phi) - chi.value(rho - h, phi)) / (2 * h);
        const double d_phi = (chi.value(rho, phi + h) - chi.value(rho, phi - h)) / (2 * h);
        const double c = chi.value(rho, phi);
        const double lap = (chi.value(rho + h, phi) - 2 * c + chi.value(rho - h, phi)) / (h * h) + d_rho / rho +
                           (chi.value(rho, phi + h) - 2 * c + chi.value(rho, phi - h)) / (h * h * rho * rho);
        CHECK(chi.d_rho(rho, phi) == doctest::Approx(d_rho).epsilon(1e-6).scale(1e-3));
        CHECK(chi.d_phi(rho, phi) == doctest::Approx(d_phi).epsilon(1e-6).scale(1e-3));
        CHECK(chi.laplacian(rho, phi) == doctest::Approx(lap).epsilon(1e-4).scale(1e-2));
      }
    }
  }
}

}
