#pragma once

#include <optional>
#include <vector>

#include "levelgraph/landscape.hpp"
#include "levelgraph/stability.hpp"

namespace lg {

enum class CurveKind { level_C0, level_D0 };
enum class Termination { radius_bound, y_axis, critical_point, vertical_slope, closed_loop };

const char* to_string(CurveKind k);
const char* to_string(Termination t);

struct Polyline {
  std::vector<cplx> points;
  CurveKind curve_kind = CurveKind::level_C0;
  Termination terminated_by = Termination::radius_bound;        // at points.back()
  Termination start_terminated_by = Termination::radius_bound;  // at points.front()
  std::vector<std::size_t> vertical_indices;                     // tangent Re-component flipped here
};

struct TraceOptions {
  double radius = 0.0;    // <= 0: 4 (1 + max|w-root|)
  double max_step = 0.0;  // <= 0: radius / 200
  double max_length = 0.0;  // <= 0: unbounded (only radius and step count limit the walk)
  double corrector_tol = 1e-10;
  double max_turn = 0.2;
  double seed_tol = 1e-8;
  double critical_snap = 1e-6;  // relative to 1 + |c|
  double connect_snap = 1e-6;   // graphical_connection: arrival within this of z1
  bool stop_at_axis = true;
  bool stop_at_vertical = false;
  int max_steps = 200000;
};

struct GraphCheck {
  bool connected = false;
  bool graphical = false;
  double min_dx_per_step = 0.0;
  double slope_sup = 0.0;
  double end_slope = 0.0;   // |dy/dx| where the arc stops
  cplx arrival;             // where the arc ended
  std::vector<cplx> arc;    // from z2 toward z1
};

double default_radius(const ComplexPolynomial& w);

Polyline trace_level(const ComplexPolynomial& w, CurveKind kind, cplx seed, const TraceOptions& opt = {});

// Follows C0 from z2 toward decreasing Re. Expects shifted data (Im w(z1) = Im w(z2) = 0).
GraphCheck graphical_connection(const BoundaryData& shifted, const TraceOptions& opt = {});

// stable / strictly_semistable / unstable as read off the traced geometry;
// semistable means a graphical arc whose end slope exceeds slope_cap
Verdict oracle_verdict(const GraphCheck& g, double slope_cap = 1e6);

// Branch directions of the curve at a singular point c of its defining function:
// the 2K rays of the local tangent cone.
std::vector<double> branch_angles(const ComplexPolynomial& w, CurveKind kind, cplx c);

// Walks a single branch leaving c along angle theta, for arc length `length`.
Polyline trace_branch(const ComplexPolynomial& w, CurveKind kind, cplx c, double theta, double length,
                      const TraceOptions& opt = {});

// Point of C0 with vertical tangent (C0 and D0 meet) near `guess`, by 2D Newton.
std::optional<cplx> locate_vertical_point(const ComplexPolynomial& w, cplx guess);

// Solves Im w(x + iy) = 0 for y by Newton from y_guess.
std::optional<double> level_point_on_line(const ComplexPolynomial& w, double x, double y_guess);

}  // namespace lg
