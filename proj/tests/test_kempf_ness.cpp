#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "instances.hpp"
#include "levelgraph/csv_io.hpp"
#include "levelgraph/errors.hpp"
#include "levelgraph/kempf_ness.hpp"

using namespace lg;
using lgt::Rng;

namespace {

const double pi = std::numbers::pi;

double bump(double a, double b, double x) { return std::pow(std::sin(pi * (x - a) / (b - a)), 2); }

struct Stable {
  BoundaryData d;
  std::shared_ptr<const Grid> grid;
  GridFunction traced;
  BackgroundSigma sigma;
};

Stable stable_case(std::uint64_t seed, int nodes = 65) {
  Rng g(seed);
  const auto sc = lgt::make_stable_case(g);
  REQUIRE(sc.has_value());
  Stable s{sc->data, make_grid(sc->data.z1.real(), sc->data.z2.real(), nodes), {}, {}};
  s.traced = traced_graph(s.grid, s.d.w, sc->arc, s.d.z1.imag(), s.d.z2.imag());
  s.sigma = default_sigma(*s.grid);
  return s;
}

}  // namespace

TEST_CASE("grid calculus") {
  const auto g = make_grid(0.0, 2.0, 33);
  const auto c = sample_function(g, 3.0, 3.0, [](double) { return 3.0; });
  for (double v : c.derivative()) CHECK(std::abs(v) < 1e-12);
  const auto sq = sample_function(g, 0.0, 4.0, [](double x) { return x * x; });
  const auto d = sq.derivative();
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(2.0 * g->x[i]).epsilon(1e-9));
  CHECK(sq.integrate(sq.values) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  const auto l = straight_line(g, 1.0, 5.0);
  for (std::size_t i = 0; i < l.values.size(); ++i) CHECK(l.values[i] == doctest::Approx(1.0 + 2.0 * g->x[i]));
}

TEST_CASE("default sigma") {
  CHECK(default_sigma_at(0.0, 1.0, 0.5) == doctest::Approx(0.25));
  CHECK(default_sigma_at(0.0, 1.0, 0.0) == 0.0);
  CHECK(default_sigma_at(0.0, 1.0, 1.0) == 0.0);
  const double h = 1e-7;
  CHECK(default_sigma_at(0.0, 1.0, h) / h == doctest::Approx(1.0).epsilon(1e-6));
  const auto g = make_grid(1.0, 3.0, 17);
  const auto s = default_sigma(*g);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    CHECK(s.values[i] > 0.0);
    const double x = g->x[i];
    CHECK(s.values[i] / (x - 1.0) <= 1.0);
    CHECK(s.values[i] / (3.0 - x) <= 1.0);
  }
  CHECK(s.rate_a == doctest::Approx(1.0));
  CHECK(s.rate_b == doctest::Approx(1.0));
}

TEST_CASE("membership") {
  const auto g = make_grid(1.0, 2.0, 17);
  const auto m = membership(straight_line(g, 0.0, 0.0), ComplexPolynomial{0.0, 1.0});
  CHECK(m.in_M);
  CHECK(m.min_value == doctest::Approx(1.0));

  const auto s = stable_case(61);
  CHECK(membership(s.traced, s.d.w).in_M);

  // w = z^2/2 on [1, 2]: d/dx Re w(x + i f) = x - f f', negative once f climbs steeply
  const ComplexPolynomial sq{0.0, 0.0, 0.5};
  const auto steep = sample_function(g, 0.0, 3.0, [](double x) { return 3.0 * (x - 1.0) * (x - 1.0); });
  CHECK_FALSE(membership(steep, sq).in_M);
}

TEST_CASE("flow for w = z decays exponentially") {
  const auto g = make_grid(1.0, 2.0, 33);
  const auto f0 = sample_function(g, 0.0, 0.0, [](double x) { return 0.3 * bump(1.0, 2.0, x); });
  FlowOptions opt;
  opt.stop_tol = 1e-8;
  const auto t = run_flow(f0, ComplexPolynomial{0.0, 1.0}, default_sigma(*g), opt);
  REQUIRE(t.converged);
  CHECK(t.J_values.front() == 0.0);
  CHECK(t.times.size() == t.J_values.size());
  CHECK(t.times.size() == t.residual_sup.size());
  CHECK(t.times.size() == t.membership_min.size());
  for (std::size_t i = 1; i < t.J_values.size(); ++i) CHECK(t.J_values[i] < t.J_values[i - 1]);
  for (std::size_t i = 0; i < t.times.size(); i += 5)
    CHECK(t.residual_sup[i] == doctest::Approx(t.residual_sup.front() * std::exp(-t.times[i])).epsilon(1e-6));
  // J drop equals the integral of f^2 / sigma over time: sum of (1 - e^{-2t}) / 2 int f0^2 / sigma
  const double T = t.times.back();
  std::vector<double> g2(f0.values.size());
  const auto sigma = default_sigma(*g);
  for (std::size_t i = 0; i < g2.size(); ++i) g2[i] = f0.values[i] * f0.values[i] / sigma.values[i];
  CHECK(t.J_values.back() == doctest::Approx(-0.5 * (1.0 - std::exp(-2.0 * T)) * f0.integrate(g2)).epsilon(1e-6));
}

TEST_CASE("fixed point: a solution does not move") {
  const auto s = stable_case(62);
  FlowOptions opt;
  opt.stop_tol = 1e-8;
  const auto t = run_flow(s.traced, s.d.w, s.sigma, opt);
  CHECK(t.converged);
  CHECK(t.residual_sup.front() < 1e-8);
  CHECK(t.steps == 0);
  CHECK(t.final_f.values == s.traced.values);
}

TEST_CASE("flow from a perturbed solution returns to it, serial and parallel alike") {
  const auto s = stable_case(63);
  const double a = s.grid->a, b = s.grid->b;
  GridFunction f0 = s.traced;
  for (std::size_t i = 0; i < f0.values.size(); ++i) f0.values[i] += 0.1 * (b - a) * bump(a, b, s.grid->x[i]);
  FlowOptions opt;
  const auto par = run_flow(f0, s.d.w, s.sigma, opt);
  REQUIRE(par.converged);
  for (std::size_t i = 0; i < f0.values.size(); ++i) CHECK(std::abs(par.final_f.values[i] - s.traced.values[i]) < 1e-6);
  for (std::size_t i = 1; i < par.J_values.size(); ++i) CHECK(par.J_values[i] <= par.J_values[i - 1] + 1e-12);

  opt.exec = Exec::serial;
  const auto ser = run_flow(f0, s.d.w, s.sigma, opt);
  CHECK(ser.times == par.times);
  CHECK(ser.J_values == par.J_values);
  CHECK(ser.final_f.values == par.final_f.values);

  std::ostringstream os;
  write_flow_csv(os, par);
  CHECK(os.str().rfind("t,J,residual_sup,membership_min\n0,0,", 0) == 0);
}

TEST_CASE("dJ_dt matches minus the squared residual along the flow direction") {
  const auto s = stable_case(64);
  GridFunction f = s.traced;
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += 0.05 * bump(s.grid->a, s.grid->b, s.grid->x[i]);
  std::vector<double> fdot(f.values.size()), g2(f.values.size());
  for (std::size_t i = 0; i < fdot.size(); ++i) {
    const double v = s.d.w(cplx(s.grid->x[i], f.values[i])).imag();
    fdot[i] = -v;
    g2[i] = v * v / s.sigma.values[i];
  }
  CHECK(dJ_dt(f, fdot, s.d.w, s.sigma) == doctest::Approx(-f.integrate(g2)).epsilon(1e-12));
}

TEST_CASE("geodesic residual") {
  const auto g = make_grid(1.0, 2.0, 33);
  const auto f0 = straight_line(g, 0.0, 0.0);
  const auto sigma = default_sigma(*g);
  const auto phi = sample_function(g, 0.0, 0.0, [](double x) { return 0.1 * bump(1.0, 2.0, x); });
  const ComplexPolynomial cube{0.0, 0.0, 0.0, 1.0 / 3.0};

  // constant path
  CHECK(geodesic_residual({phi, phi, phi, phi}, 0.25, f0, cube, sigma) == 0.0);

  // w = z: Im w' = 0, so paths linear in t are geodesics
  std::vector<GridFunction> path;
  for (int k = 0; k <= 4; ++k) {
    GridFunction p = phi;
    for (auto& v : p.values) v *= 0.25 * k;
    path.push_back(p);
  }
  CHECK(geodesic_residual(path, 0.25, f0, ComplexPolynomial{0.0, 1.0}, sigma) < 1e-12);
}

TEST_CASE("relaxed geodesic: small residual and J convex along it") {
  const auto s = stable_case(65, 33);
  const double a = s.grid->a, b = s.grid->b;
  const auto phi0 = sample_function(s.grid, 0.0, 0.0, [](double) { return 0.0; });
  const auto phi1 =
      sample_function(s.grid, 0.0, 0.0, [&](double x) { return 0.02 * (b - a) * (b - a) * bump(a, b, x); });
  const auto geo = relax_geodesic(s.traced, phi0, phi1, 16, s.d.w, s.sigma);
  CHECK(geo.residual < 1e-4);
  CHECK(geodesic_residual(geo.path, geo.dt, s.traced, s.d.w, s.sigma) == doctest::Approx(geo.residual));
  const auto dj = dJ_along(geo.path, geo.dt, s.traced, s.d.w, s.sigma);
  for (std::size_t k = 1; k < dj.size(); ++k) CHECK((dj[k] - dj[k - 1]) / geo.dt >= -1e-6);
}

TEST_CASE("second variation") {
  const auto s = stable_case(66);
  const double a = s.grid->a, b = s.grid->b;
  const auto zero = sample_function(s.grid, 0.0, 0.0, [](double) { return 0.0; });
  CHECK(second_variation_at(s.traced, zero, s.d.w, s.sigma) == 0.0);

  const auto psi = sample_function(s.grid, 0.0, 0.0, [&](double x) {
    return std::sin(pi * (x - a) / (b - a)) - 0.4 * std::sin(3.0 * pi * (x - a) / (b - a));
  });
  const double v = second_variation_at(s.traced, psi, s.d.w, s.sigma);
  CHECK(v > 0.0);
  CHECK(second_variation_at(s.traced, psi, -s.d.w, s.sigma) == -v);
}

TEST_CASE("steepening lines drive J down without bound") {
  // w = z^3/3 on the level through 1 + 1.5i, an unstable configuration; Im w < 0 just above z1
  const ComplexPolynomial w{cplx(0.0, -0.375), 0.0, 0.0, 1.0 / 3.0};
  const double a = 1.0, b = 2.0, p = 1.5;
  const auto ys = lgt::level_points_on_line(w, b, 0.0);
  double q = 1e300;
  for (double y : ys)
    if (std::abs(y) < std::abs(q)) q = y;
  auto f0 = [&](double x) { return p + 0.5 + (q - p - 0.5) * (x - a) / (b - a); };

  const double t0 = 10.0;
  const double bound = t0 * steepening_dJ_dt(w, a, b, p, f0, t0);
  REQUIRE(bound < 0.0);
  // trapezoid in log t
  double J = 0.0, prev = bound;
  const int steps = 200;
  for (int k = 1; k <= steps; ++k) {
    const double t = t0 * std::pow(100.0, static_cast<double>(k) / steps);
    const double cur = t * steepening_dJ_dt(w, a, b, p, f0, t);
    CHECK(cur <= bound);
    J += 0.5 * (prev + cur) * std::log(100.0) / steps;
    prev = cur;
  }
  CHECK(J <= bound * std::log(100.0));

  CHECK_THROWS_AS(steepening_dJ_dt(w, a, b, p, [&](double) { return p - 1.0; }, t0), Error);
}

TEST_CASE("graph CSV carries both endpoints") {
  const auto g = make_grid(0.0, 1.0, 3);
  std::ostringstream os;
  write_graph_csv(os, straight_line(g, 1.0, 2.0));
  const std::string s = os.str();
  CHECK(s.rfind("x,f\n0,1\n", 0) == 0);
  CHECK(s.size() >= 4);
  CHECK(s.substr(s.size() - 4) == "1,2\n");
}
