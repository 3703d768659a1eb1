#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "instances.hpp"
#include "levelgraph/csv_io.hpp"
#include "levelgraph/errors.hpp"
#include "levelgraph/regions.hpp"
#include "levelgraph/tracer.hpp"

using namespace lg;
using lgt::Rng;

namespace {

const ComplexPolynomial kCube{0.0, 0.0, 0.0, 1.0 / 3.0};

BoundaryData cube_data(cplx z1) {
  const double level = kCube(z1).imag();
  double best = 1e300;
  for (double y : lgt::level_points_on_line(kCube, 2.0, level))
    if (std::abs(y) < std::abs(best)) best = y;
  return shift_to_zero_level({kCube, z1, cplx(2.0, best)});
}

}  // namespace

TEST_CASE("trace_level: w = z follows the real axis") {
  const auto pl = trace_level(ComplexPolynomial{0.0, 1.0}, CurveKind::level_C0, 1.0);
  REQUIRE(pl.points.size() > 10);
  for (const cplx z : pl.points) CHECK(std::abs(z.imag()) < 1e-12);
  // one end at the radius bound, the other on the axis
  CHECK(pl.start_terminated_by == Termination::radius_bound);
  CHECK(pl.terminated_by == Termination::y_axis);
  CHECK(std::abs(pl.points.back()) < 1e-2);
  CHECK(pl.points.front().real() > 1.0);
}

TEST_CASE("trace_level: z^3/3 from 1 stays on the real axis") {
  const auto pl = trace_level(kCube, CurveKind::level_C0, 1.0);
  for (const cplx z : pl.points) CHECK(std::abs(z.imag()) < 1e-10);
  CHECK(pl.start_terminated_by == Termination::radius_bound);
  CHECK(pl.terminated_by == Termination::critical_point);
  CHECK(std::abs(pl.points.back()) < 1e-12);
}

TEST_CASE("trace_level: D0 of z^3/3 is y = x") {
  const auto pl = trace_level(kCube, CurveKind::level_D0, cplx(1.0, 1.0) / std::numbers::sqrt2);
  REQUIRE(pl.points.size() > 10);
  for (const cplx z : pl.points) CHECK(std::abs(z.imag() - z.real()) < 1e-9 * (1.0 + std::abs(z)));
  CHECK(pl.curve_kind == CurveKind::level_D0);
}

TEST_CASE("trace_level rejects a seed off the curve") {
  try {
    trace_level(ComplexPolynomial{0.0, 1.0}, CurveKind::level_C0, cplx(1.0, 1.0));
    FAIL("expected SeedNotOnCurve");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeedNotOnCurve);
  }
}

TEST_CASE("graphical_connection: z^3/3 examples") {
  auto g = graphical_connection(shift_to_zero_level({kCube, 1.0, 2.0}));
  CHECK(g.connected);
  CHECK(g.graphical);
  CHECK(g.slope_sup < 1e-6);
  CHECK(oracle_verdict(g) == Verdict::stable);

  g = graphical_connection(cube_data({1.0, 1.0}));
  CHECK(g.connected);
  CHECK(g.graphical);
  CHECK(g.slope_sup > 1e3);
  CHECK(oracle_verdict(g) == Verdict::strictly_semistable);

  g = graphical_connection(cube_data({1.0, 1.5}));
  CHECK_FALSE(g.connected);
  CHECK(oracle_verdict(g) == Verdict::unstable);
}

TEST_CASE("sample_regions: z^3/3 is split by y = +-x") {
  const Rect r{0.1, 3.0, -3.0, 3.0, 6, 7};
  const auto s = sample_regions(kCube, r);
  REQUIRE(s.points.size() == 42);
  int whole = 0;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const cplx z = s.points[i];
    REQUIRE(s.labels[i].has_value());
    const auto n = *s.labels[i];
    if (std::abs(std::abs(z.imag()) - z.real()) < 1e-9) {
      CHECK_FALSE(n.is_integer());
      continue;
    }
    const int want = z.imag() < -z.real() ? 1 : z.imag() > z.real() ? 3 : 2;
    CHECK(n == HalfInteger::whole(want));
    ++whole;
  }
  CHECK(whole >= 40);
  CHECK(sample_regions(kCube, r, {}, Exec::serial).labels == s.labels);
}

TEST_CASE("sample_regions: z^2/2 has a single region") {
  const auto s = sample_regions(ComplexPolynomial{0.0, 0.0, 0.5}, {0.1, 3.0, -3.0, 3.0, 5, 5});
  for (const auto& l : s.labels) CHECK(l == HalfInteger::whole(1));
}

TEST_CASE("region labels are constant on each C0 arc between vertical points") {
  Rng g(51);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    const auto w = lgt::random_w(g, lgt::uniform_int(g, 2, 6));
    for (double y : lgt::level_points_on_line(w, 1.0, 0.0)) {
      try {
        const auto pl = trace_level(w, CurveKind::level_C0, cplx(1.0, y));
        const auto labels = label_points(w, pl.points);
        // C0 crosses D0 only where it turns vertical, so the label may change only next to such a point
        std::optional<std::size_t> prev;
        for (std::size_t k = 0; k < pl.points.size(); ++k) {
          const auto& l = labels[k];
          if (pl.points[k].real() <= 0.05 || !l || !l->is_integer()) continue;
          if (prev && *labels[*prev] != *l) {
            bool near_fold = false;
            for (auto v : pl.vertical_indices) near_fold = near_fold || (v + 1 >= *prev && v <= k + 1);
            CHECK(near_fold);
          }
          prev = k;
          ++checked;
        }
      } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::CorrectorDiverged || e.kind() == ErrorKind::IndeterminateSign));
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("D0 at a non-generic critical point of order k has k + 1 branches in Re >= 0") {
  for (int k = 1; k <= 3; ++k) {
    // w' = beta z^k (z + 1) with beta i^(k+1) real
    ComplexPolynomial dw = pow(ComplexPolynomial{0.0, 1.0}, k) * ComplexPolynomial{1.0, 1.0};
    dw = dw * std::pow(cplx(0.0, 1.0), -(k + 1));
    const auto w = dw.antiderivative();
    const auto axis = on_axis_critical_points(w);
    REQUIRE(axis.size() == 1);
    CHECK(axis[0].order == k);
    CHECK(axis[0].genericity == Genericity::non_generic);

    const auto rays = branch_angles(w, CurveKind::level_D0, 0.0);
    REQUIRE(rays.size() == static_cast<std::size_t>(2 * k));
    int closed = 0, open = 0;
    for (double th : rays) {
      if (std::cos(th) < -1e-9) continue;
      ++closed;
      if (std::cos(th) <= 1e-9) continue;
      ++open;
      const auto pl = trace_branch(w, CurveKind::level_D0, 0.0, th, 0.3);
      REQUIRE(pl.points.size() > 2);
      for (std::size_t j = 1; j < pl.points.size(); ++j) CHECK(pl.points[j].real() > 0.0);
    }
    CHECK(closed == k + 1);
    CHECK(open == k - 1);
  }
}

TEST_CASE("locate_vertical_point and level_point_on_line") {
  // C0 of z^3/3 through 1 + i bends back where it meets y = x
  const auto v = locate_vertical_point(kCube - ComplexPolynomial{cplx(0.0, 2.0 / 3.0)}, {1.05, 0.95});
  REQUIRE(v.has_value());
  CHECK(std::abs(*v - cplx(1.0, 1.0)) < 1e-9);

  const auto y = level_point_on_line(kCube, 2.0, 0.3);
  REQUIRE(y.has_value());
  CHECK(std::abs(*y) < 1e-12);
}

TEST_CASE("polyline CSV") {
  Polyline a;
  a.points = {{0.5, -1.0}, {1.0, 0.25}};
  std::ostringstream os;
  write_polylines_csv(os, {a});
  CHECK(os.str() == "re,im\n0.5,-1\n1,0.25\n");

  std::ostringstream two;
  write_polylines_csv(two, {a, a});
  CHECK(two.str().rfind("curve,re,im\n0,0.5,-1\n", 0) == 0);

  std::istringstream in(os.str());
  const auto xy = read_xy_csv(in);
  REQUIRE(xy.size() == 2);
  CHECK(xy[1] == std::pair{1.0, 0.25});
}
