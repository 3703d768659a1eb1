#include <cmath>

#include "doctest.h"
#include "instances.hpp"
#include "levelgraph/errors.hpp"
#include "levelgraph/json_io.hpp"

using namespace lg;
using lgt::Rng;

namespace {

const ComplexPolynomial kCube{0.0, 0.0, 0.0, 1.0 / 3.0};

// emit -> parse -> typed value -> emit reproduces the text
template <class T>
T round_trip(const T& x) {
  const std::string text = emit(json(x));
  const T back = json::parse(text).get<T>();
  CHECK(emit(json(back)) == text);
  return back;
}

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(parse_complex("1,2") == cplx(1.0, 2.0));
  CHECK(parse_complex("-0.5,0") == cplx(-0.5, 0.0));
  CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
  CHECK(parse_complex("3-i") == cplx(3.0, -1.0));
  CHECK(parse_complex("2.5i") == cplx(0.0, 2.5));
  CHECK(parse_complex("4") == cplx(4.0, 0.0));
  CHECK_THROWS_AS(parse_complex("1,2x"), Error);
  CHECK_THROWS_AS(parse_complex(""), Error);
}

TEST_CASE("emit is stable text") {
  const json j = {{"b", 1}, {"a", {{"z", 0.1}, {"y", "s"}}}};
  const std::string s = emit(j);
  CHECK(s == "{\n  \"a\": {\n    \"y\": \"s\",\n    \"z\": 0.1\n  },\n  \"b\": 1\n}\n");
  CHECK(emit(json::parse(s)) == s);
}

TEST_CASE("HalfInteger JSON") {
  CHECK(json(HalfInteger::from_twice(5)) == json("5/2"));
  CHECK(round_trip(HalfInteger::from_twice(-3)) == HalfInteger::from_twice(-3));
}

TEST_CASE("StabilityVerdict round trip") {
  double y2 = 1e300;
  for (double y : lgt::level_points_on_line(kCube, 2.0, 2.0 / 3.0))
    if (std::abs(y) < std::abs(y2)) y2 = y;
  const auto v = classify({kCube, cplx(1.0, 1.0), cplx(2.0, y2)});
  const auto back = round_trip(v);
  CHECK(back.verdict == v.verdict);
  CHECK(back.n1 == v.n1);
  CHECK(back.n2 == v.n2);
  CHECK(back.kase == v.kase);
  CHECK(back.critical_order == v.critical_order);

  // critical z1: w' = i z (z + 1)
  const ComplexPolynomial w = (ComplexPolynomial{0.0, 1.0, 1.0} * cplx(0.0, 1.0)).antiderivative();
  const auto ys = lgt::level_points_on_line(w, 1.0, 0.0);
  REQUIRE_FALSE(ys.empty());
  const auto c = classify({w, 0.0, cplx(1.0, ys.front())});
  REQUIRE(c.critical_order.has_value());
  CHECK(round_trip(c).critical_order == c.critical_order);
}

TEST_CASE("Polyline and GraphCheck round trip") {
  const auto pl = trace_level(kCube, CurveKind::level_D0, cplx(0.5, 0.5));
  const auto p = round_trip(pl);
  CHECK(p.points == pl.points);
  CHECK(p.vertical_indices == pl.vertical_indices);
  CHECK(p.terminated_by == pl.terminated_by);

  const auto g = graphical_connection(shift_to_zero_level({kCube, 1.0, 2.0}));
  const auto gb = round_trip(g);
  CHECK(gb.arc == g.arc);
  CHECK(gb.slope_sup == g.slope_sup);
  CHECK(gb.end_slope == g.end_slope);
  CHECK(gb.arrival == g.arrival);
}

TEST_CASE("GridFunction and FlowTrace round trip") {
  const auto grid = make_grid(1.0, 2.0, 17);
  const auto f0 = sample_function(grid, 0.0, 0.0, [](double x) { return 0.1 * (x - 1.0) * (2.0 - x); });
  const auto f = round_trip(f0);
  CHECK(f.values == f0.values);
  CHECK(f.grid->x == grid->x);

  FlowOptions opt;
  opt.stop_tol = 1e-6;
  const auto t = run_flow(f0, ComplexPolynomial{0.0, 1.0}, default_sigma(*grid), opt);
  const auto tb = round_trip(t);
  CHECK(tb.times == t.times);
  CHECK(tb.J_values == t.J_values);
  CHECK(tb.final_f.values == t.final_f.values);
  CHECK(tb.converged == t.converged);
}

TEST_CASE("CalabiInput and ChargeReport round trip") {
  const CalabiInput in{2, 1, 1.25, -0.5, 0.75, 0.3};
  const auto ib = round_trip(in);
  CHECK(ib.m == in.m);
  CHECK(ib.xi2 == in.xi2);
  CHECK(ib.q == in.q);

  Rng g(81);
  for (int i = 0; i < 20; ++i) {
    const auto r = analyze(lgt::random_calabi(g, 1, 3, 0, 3));
    const auto rb = round_trip(r);
    CHECK(rb.phi_Dinf == r.phi_Dinf);
    CHECK(rb.Z_X == r.Z_X);
    CHECK(rb.verdict == r.verdict);
  }

  DhymOptions opt;
  auto r = analyze({1, 0, 1.0, 0.0, 1.0, 0.0}, opt);
  r.witness = make_witness({1, 0, 1.0, 0.0, 1.0, 0.0}, build_polynomials({1, 0, 1.0, 0.0, 1.0, 0.0}));
  const auto rb = round_trip(r);
  REQUIRE(rb.witness.has_value());
  CHECK(rb.witness->f_flow == r.witness->f_flow);
  CHECK(rb.witness->flow_converged);
}

TEST_CASE("identical inputs give identical text") {
  const CalabiInput in{1, 1, 0.8, 0.4, 1.3, -0.2};
  CHECK(emit(json(analyze(in))) == emit(json(analyze(in))));
}

TEST_CASE("RunConfig") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  const auto cb = round_trip(c);
  CHECK(cb.sign_tol == c.sign_tol);
  CHECK(cb.format == c.format);

  const auto partial = json::parse(R"({"sign_tol": 1e-10, "jobs": 1})").get<RunConfig>();
  CHECK(partial.sign_tol == 1e-10);
  CHECK(partial.jobs == 1);
  CHECK(partial.flow_nodes == c.flow_nodes);

  CHECK_THROWS(json::parse(R"({"sign_tolerance": 1e-10})").get<RunConfig>());
  RunConfig bad;
  bad.sign_tol = -1.0;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = {};
  bad.flow_nodes = 1;
  CHECK_THROWS_AS(validate(bad), Error);

  c.sign_tol = 1e-11;
  c.corrector_tol = 1e-12;
  CHECK(classify_options(c).landscape.index.sign_tol == 1e-11);
  CHECK(trace_options(c).corrector_tol == 1e-12);
  CHECK(flow_options(c).stop_tol == c.stop_tol);
}
