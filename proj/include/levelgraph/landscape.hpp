#pragma once

#include <vector>

#include "levelgraph/cauchy_index.hpp"
#include "levelgraph/poly.hpp"

namespace lg {

enum class Genericity { generic, non_generic };
const char* to_string(Genericity g);

struct LandscapeOptions {
  // a w'-root with |Re| <= axis_snap * (1 + max|w'-root|) sits on the imaginary axis
  double axis_snap = 1e-8;
  // relative test |Re(beta i^k)| < genericity_tol |beta|
  double genericity_tol = 1e-9;
  // DegenerateLine when every coefficient of Re(w'(x0+iy)) is below this (relative)
  double degenerate_tol = 1e-12;
  // points closer than this (relative) to an on-axis critical point are identified with it
  double critical_snap = 1e-7;
  IndexOptions index;
};

struct CriticalPoint {
  double y0 = 0.0;
  int order = 1;
  cplx leading_coeff;  // w'^(k)(i y0) / k!
  Genericity genericity = Genericity::generic;
};

struct TangentConeAtInfinity {
  cplx vertex;
  std::vector<double> ray_angles;
  Genericity genericity = Genericity::generic;
};

struct CountingResult {
  HalfInteger value;
  HalfInteger interval_index;
  int crit_sum = 0;
};

// Length scale 1 + max|w'-root|, used by the axis snap band.
double critical_scale(const std::vector<RootWithMultiplicity>& crit);

// Roots of w'; throws CriticalPointInRHP when one has Re > snap band.
std::vector<RootWithMultiplicity> validate_no_rhp_critical_points(const ComplexPolynomial& w,
                                                                  const LandscapeOptions& opt = {});

std::vector<CriticalPoint> on_axis_critical_points(const ComplexPolynomial& w, const LandscapeOptions& opt = {});

TangentConeAtInfinity tangent_cone_at_infinity(const ComplexPolynomial& w, double tol = 1e-9);

// R_x0(y) = Im w'(x0+iy) / Re w'(x0+iy)
RationalFunction vertical_ratio(const ComplexPolynomial& w, double x0);

CountingResult counting_function(const ComplexPolynomial& w, cplx z0, const LandscapeOptions& opt = {});

// Same, reusing precomputed on-axis critical data (hot path for region sampling).
CountingResult counting_function(const ComplexPolynomial& w, cplx z0, const std::vector<CriticalPoint>& axis_crit,
                                 double crit_scale, const LandscapeOptions& opt);

}  // namespace lg
