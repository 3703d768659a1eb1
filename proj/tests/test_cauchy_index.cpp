#include "doctest.h"
#include "instances.hpp"
#include "levelgraph/cauchy_index.hpp"
#include "levelgraph/errors.hpp"

using namespace lg;
using lgt::Rng;

namespace {

const RealPolynomial kY{0.0, 1.0};
const RealPolynomial kOne{1.0};

HalfInteger H(std::int64_t twice) { return HalfInteger::from_twice(twice); }

// all three backends on one interval
void check_all(const RationalFunction& h, double c, double d, HalfInteger want) {
  CHECK(index_on_interval(h, c, d) == want);
  CHECK(index_on_interval_sturm(h, c, d) == want);
  CHECK(index_on_interval_exact(h, c, d) == want);
}

}  // namespace

TEST_CASE("HalfInteger text form") {
  CHECK(H(5).to_string() == "5/2");
  CHECK(H(-1).to_string() == "-1/2");
  CHECK(H(4).to_string() == "2");
  CHECK(HalfInteger::parse("-7/2") == H(-7));
  CHECK(HalfInteger::parse("3") == H(6));
  CHECK_THROWS_AS(HalfInteger::parse("3/4"), Error);
  CHECK_THROWS_AS(HalfInteger::parse("x"), Error);
  CHECK(H(3) + H(1) == HalfInteger::whole(2));
  CHECK(-H(3) < H(0));
}

TEST_CASE("index at a point") {
  CHECK(index_at_point({kOne, kY}, 0.0) == HalfInteger::whole(1));
  CHECK(index_at_point({-kOne, kY}, 0.0) == HalfInteger::whole(-1));
  CHECK(index_at_point({kOne, kY * kY}, 0.0) == HalfInteger{});
}

TEST_CASE("one-sided indices") {
  CHECK(index_one_sided({kOne, kY}, 0.0, Side::plus) == H(1));
  CHECK(index_one_sided({kOne, kY}, 0.0, Side::minus) == H(-1));
  CHECK(index_one_sided({kY, kOne}, 0.0, Side::plus) == HalfInteger{});
}

TEST_CASE("interval indices, all backends") {
  check_all({kOne, kY}, -1.0, 1.0, HalfInteger::whole(1));
  check_all({kOne, kY}, 0.0, 1.0, H(1));
  const RealPolynomial P = RealPolynomial{-1.0, 1.0} * RealPolynomial{-3.0, 1.0} * RealPolynomial{2.0, 1.0};
  check_all({P.derivative(), P}, -kInf, kInf, HalfInteger::whole(3));
}

TEST_CASE("y/(y^2-1) on [-2, 2] is the sum of the pointwise indices") {
  const RationalFunction h{kY, RealPolynomial{-1.0, 0.0, 1.0}};
  const HalfInteger sum = index_at_point(h, -1.0) + index_at_point(h, 1.0);
  CHECK(sum == HalfInteger::whole(2));
  CHECK(index_on_interval_sturm(h, -2.0, 2.0) == sum);
  CHECK(index_on_interval(h, -2.0, 2.0) == sum);
}

TEST_CASE("constant denominator has no poles") {
  const RationalFunction h{RealPolynomial{1.0, -2.0, 3.0}, RealPolynomial{2.5}};
  check_all(h, -kInf, kInf, HalfInteger{});
  check_all(h, -3.0, 7.0, HalfInteger{});
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(index_on_interval({kOne, RealPolynomial{}}, 0.0, 1.0), Error);
  CHECK_THROWS_AS(index_on_interval({kOne, kY}, 1.0, 0.0), Error);
  try {
    index_at_point({kOne, RealPolynomial{}}, 0.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DenominatorIdenticallyZero);
  }
}

TEST_CASE("cancelled roots contribute nothing") {
  // (y - 1)/((y - 1) y) = 1/y
  const RationalFunction h{RealPolynomial{-1.0, 1.0}, RealPolynomial{-1.0, 1.0} * kY};
  check_all(h, -2.0, 2.0, HalfInteger::whole(1));
}

TEST_CASE("additivity and antisymmetry") {
  Rng g(21);
  for (int i = 0; i < 100; ++i) {
    const auto h = lgt::random_rational(g, 6);
    if (h.den.degree() < 1) continue;
    const double d = lgt::uniform(g, -2.0, 2.0);
    if (std::abs(h.den(d)) < 1e-6) continue;
    const auto left = index_on_interval_exact(h, -kInf, d), right = index_on_interval_exact(h, d, kInf);
    CHECK(left + right == index_on_interval_exact(h, -kInf, kInf));
    CHECK(index_on_interval_exact({-h.num, h.den}, -kInf, kInf) == -index_on_interval_exact(h, -kInf, kInf));
  }
}

TEST_CASE("root counting with repeated roots") {
  // (y + 1)(y + 3)^2 (y^2 + y + 2)(y^2 + 2y + 4) y: three distinct real roots
  const RealPolynomial P = RealPolynomial{1.0, 1.0} * RealPolynomial{3.0, 1.0} * RealPolynomial{3.0, 1.0} *
                           RealPolynomial{2.0, 1.0, 1.0} * RealPolynomial{4.0, 2.0, 1.0} * kY;
  check_all({P.derivative(), P}, -kInf, kInf, HalfInteger::whole(3));
}

TEST_CASE("multiplicity_at") {
  const RealPolynomial p = RealPolynomial{-2.0, 1.0} * RealPolynomial{-2.0, 1.0} * RealPolynomial{5.0, 1.0};
  CHECK(multiplicity_at(p, 2.0) == 2);
  CHECK(multiplicity_at(p, -5.0) == 1);
  CHECK(multiplicity_at(p, 0.0) == 0);
}
