#include <numbers>

#include "doctest.h"
#include "instances.hpp"
#include "levelgraph/errors.hpp"
#include "levelgraph/landscape.hpp"
#include "levelgraph/tracer.hpp"

using namespace lg;
using lgt::Rng;

namespace {

const double pi = std::numbers::pi;
const ComplexPolynomial kCube{0.0, 0.0, 0.0, 1.0 / 3.0};
const ComplexPolynomial kSquare{0.0, 0.0, 0.5};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;  // nothing thrown
}

}  // namespace

TEST_CASE("validate_no_rhp_critical_points") {
  auto r = validate_no_rhp_critical_points(kCube);
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 2);
  CHECK(std::abs(r[0].location) < 1e-12);

  CHECK(kind_of([] { validate_no_rhp_critical_points(ComplexPolynomial{-1.0, 1.0}.antiderivative()); }) ==
        ErrorKind::CriticalPointInRHP);

  const ComplexPolynomial w = from_roots({-1.0, -1.0, cplx(0.0, 1.0)}).antiderivative();
  r = validate_no_rhp_critical_points(w);
  int total = 0;
  for (const auto& x : r) total += x.multiplicity;
  CHECK(total == 3);
  const auto axis = on_axis_critical_points(w);
  REQUIRE(axis.size() == 1);
  CHECK(axis[0].y0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(axis[0].order == 1);
}

TEST_CASE("on_axis_critical_points: genericity from the tangent cone") {
  auto c = on_axis_critical_points(kCube);
  REQUIRE(c.size() == 1);
  CHECK(c[0].y0 == doctest::Approx(0.0));
  CHECK(c[0].order == 2);
  CHECK(std::abs(c[0].leading_coeff - 1.0) < 1e-12);
  CHECK(c[0].genericity == Genericity::generic);

  c = on_axis_critical_points(ComplexPolynomial{0.0, cplx(0.0, 1.0)}.antiderivative());  // w' = i z
  REQUIRE(c.size() == 1);
  CHECK(c[0].order == 1);
  CHECK(std::abs(c[0].leading_coeff - cplx(0.0, 1.0)) < 1e-12);
  CHECK(c[0].genericity == Genericity::generic);

  c = on_axis_critical_points(kSquare);  // w' = z
  REQUIRE(c.size() == 1);
  CHECK(c[0].order == 1);
  CHECK(c[0].genericity == Genericity::non_generic);
}

TEST_CASE("counting function") {
  auto n = counting_function(kCube, 1.0);
  CHECK(n.interval_index == HalfInteger::whole(-1));
  CHECK(n.value == HalfInteger::whole(2));

  n = counting_function(kCube, {1.0, 1.0});
  CHECK(n.value == HalfInteger::from_twice(5));

  n = counting_function(kSquare, 1.0);
  CHECK(n.value == HalfInteger::whole(1));
}

TEST_CASE("counting function identity value = |index| + crit_sum + 1") {
  Rng g(31);
  for (int i = 0; i < 60; ++i) {
    const auto w = lgt::random_w(g, lgt::uniform_int(g, 2, 6));
    const cplx z0(lgt::uniform(g, 0.0, 1.0) < 0.3 ? 0.0 : lgt::uniform(g, 0.05, 3.0), lgt::uniform(g, -3.0, 3.0));
    try {
      const auto n = counting_function(w, z0);
      CHECK(n.value == n.interval_index.abs() + HalfInteger::whole(n.crit_sum + 1));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IndeterminateSign);
    }
  }
}

TEST_CASE("DegenerateLine when Re w' vanishes on the whole line") {
  const ComplexPolynomial w{0.0, cplx(0.0, 1.0)};  // w' = i
  CHECK(kind_of([&] { counting_function(w, 1.0); }) == ErrorKind::DegenerateLine);
}

TEST_CASE("tangent cone at infinity") {
  auto t = tangent_cone_at_infinity(kCube);
  CHECK(std::abs(t.vertex) < 1e-14);
  REQUIRE(t.ray_angles.size() == 3);
  CHECK(t.ray_angles[0] == doctest::Approx(-pi / 3));
  CHECK(t.ray_angles[1] == doctest::Approx(0.0));
  CHECK(t.ray_angles[2] == doctest::Approx(pi / 3));
  CHECK(t.genericity == Genericity::generic);

  CHECK(tangent_cone_at_infinity(kSquare).genericity == Genericity::non_generic);

  const auto w = from_roots({cplx(1.0, 1.0), cplx(-1.0, -1.0), 0.0});
  CHECK(std::abs(tangent_cone_at_infinity(w).vertex) < 1e-14);
}

TEST_CASE("C0 and D0 cones at infinity share their genericity") {
  Rng g(32);
  auto d0_flag = [](const ComplexPolynomial& w) {
    // D0 = {Re w' = 0}; its cone holds the axis when Re(lead(w') i^(n-1)) = 0
    const int n = w.degree();
    const cplx lead = w.derivative().leading();
    const double v = (lead * std::pow(cplx(0.0, 1.0), n - 1)).real();
    return std::abs(v) < 1e-9 * std::abs(lead) ? Genericity::non_generic : Genericity::generic;
  };
  for (int i = 0; i < 100; ++i) {
    ComplexPolynomial w = lgt::random_complex_poly(g, lgt::uniform_int(g, 1, 7));
    if (i % 4 == 0) {
      // force a real leading term times i^-n so the cone contains the axis
      std::vector<cplx> c = w.coeffs();
      c.back() = std::abs(c.back()) * std::pow(cplx(0.0, 1.0), -w.degree());
      w = ComplexPolynomial(c);
    }
    CHECK(tangent_cone_at_infinity(w).genericity == d0_flag(w));
  }
}

TEST_CASE("index of R0 at a constructed critical point") {
  // w' = z (z + 1): non-generic at 0, index -1
  const ComplexPolynomial ng = ComplexPolynomial{0.0, 1.0, 1.0}.antiderivative();
  CHECK(on_axis_critical_points(ng).front().genericity == Genericity::non_generic);
  CHECK(index_at_point(vertical_ratio(ng, 0.0), 0.0) == HalfInteger::whole(-1));
  // w' = i z (z + 1): generic at 0, index 0
  const ComplexPolynomial gen = (ComplexPolynomial{0.0, 1.0, 1.0} * cplx(0.0, 1.0)).antiderivative();
  CHECK(on_axis_critical_points(gen).front().genericity == Genericity::generic);
  CHECK(index_at_point(vertical_ratio(gen, 0.0), 0.0) == HalfInteger{});
}

TEST_CASE("D0 has no vertical tangent inside the right half-plane") {
  Rng g(33);
  int traced = 0;
  for (int i = 0; i < 40; ++i) {
    const auto w = lgt::random_w(g, lgt::uniform_int(g, 3, 6));
    const auto re = restrict_to_vertical_line(w.derivative(), 1.0).re;
    if (re.degree() < 1) continue;
    for (const auto& r : real_roots(re)) {
      try {
        const auto pl = trace_level(w, CurveKind::level_D0, cplx(1.0, r.location.real()));
        ++traced;
        // a flip flagged within one step of the axis belongs to an axis point
        for (auto k : pl.vertical_indices) CHECK(pl.points[k].real() <= 1e-2);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CorrectorDiverged);
      }
    }
  }
  CHECK(traced > 20);
}
