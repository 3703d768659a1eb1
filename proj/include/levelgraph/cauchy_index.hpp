#pragma once

#include <limits>

#include "levelgraph/half_integer.hpp"
#include "levelgraph/poly.hpp"

namespace lg {

struct RationalFunction {
  RealPolynomial num;
  RealPolynomial den;
};

enum class Side { plus, minus };

struct IndexOptions {
  // value is zero when |v| <= sign_tol (1 + coefficient scale), or below Horner rounding at x
  double sign_tol = 1e-9;
  // values within gray_factor times the zero band raise IndeterminateSign
  double gray_factor = 100.0;
  // computed den roots this close to a finite endpoint are identified with it
  double endpoint_snap = 1e-7;
  double root_tol = -1.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

HalfInteger index_one_sided(const RationalFunction& h, double s, Side side, const IndexOptions& opt = {});
HalfInteger index_at_point(const RationalFunction& h, double s, const IndexOptions& opt = {});

// Pole enumeration over real roots of den; c may be -inf and d may be +inf.
HalfInteger index_on_interval(const RationalFunction& h, double c, double d, const IndexOptions& opt = {});

// Signed-remainder sequence of (den, num), reduced by its last element, with
// half-weight sign variations at zeros. Endpoints that are poles are allowed.
HalfInteger index_on_interval_sturm(const RationalFunction& h, double c, double d,
                                    const IndexOptions& opt = {});

// Same sequence over exact rationals (every double is a dyadic rational, so
// the inputs are taken at face value). No tolerance anywhere.
HalfInteger index_on_interval_exact(const RationalFunction& h, double c, double d);

// Smallest j with p^(j)(x) outside the zero band; throws IndeterminateSign on gray values.
int multiplicity_at(const RealPolynomial& p, double x, const IndexOptions& opt = {});

}  // namespace lg
