#include "levelgraph/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levelgraph/errors.hpp"

namespace lg {

const char* to_string(CurveKind k) { return k == CurveKind::level_C0 ? "level_C0" : "level_D0"; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::radius_bound: return "radius_bound";
    case Termination::y_axis: return "y_axis";
    case Termination::critical_point: return "critical_point";
    case Termination::vertical_slope: return "vertical_slope";
    case Termination::closed_loop: return "closed_loop";
  }
  return "?";
}

double default_radius(const ComplexPolynomial& w) {
  double m = 0.0;
  if (w.degree() >= 1)
    for (const auto& r : roots(w)) m = std::max(m, std::abs(r.location));
  return 4.0 * (1.0 + m);
}

namespace {

// F = Re g, with g = -i w for C0 and g = w' for D0; grad F = conj(g').
struct Level {
  ComplexPolynomial g, dg;
  Level(const ComplexPolynomial& w, CurveKind k)
      : g(k == CurveKind::level_C0 ? w * cplx(0.0, -1.0) : w.derivative()), dg(g.derivative()) {}
  double F(cplx z) const { return g(z).real(); }
  cplx grad(cplx z) const { return std::conj(dg(z)); }
  double tol(cplx z, double rel) const { return rel * (1.0 + g.magnitude(z)); }
};

double dot(cplx a, cplx b) { return (a * std::conj(b)).real(); }

bool correct(const Level& L, cplx& z, double rel) {
  for (int it = 0; it < 12; ++it) {
    const cplx gr = L.grad(z);
    const double n2 = std::norm(gr);
    if (n2 == 0.0 || !std::isfinite(n2)) return false;
    const cplx step = L.F(z) * gr / n2;
    z -= step;
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) break;
  }
  return std::isfinite(z.real()) && std::abs(L.F(z)) <= L.tol(z, rel);
}

cplx unit_tangent(const Level& L, cplx z) {
  const cplx t = cplx(0.0, 1.0) * L.grad(z);
  return t / std::abs(t);
}

double segment_distance(cplx a, cplx b, cplx c) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? dot(c - a, ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(a + s * ab - c);
}

enum class End { radius_bound, y_axis, critical_point, vertical_slope, closed_loop, x_floor };

struct Walker {
  const Level& L;
  const TraceOptions& opt;
  double radius;
  double hmax;
  std::vector<cplx> crit;
  double x_floor = -kInf;

  End walk(cplx z, cplx t, std::vector<cplx>& pts, std::vector<std::size_t>& vert) const {
    const cplx start = z;
    const double hmin = 1e-12 * (1.0 + radius);
    double h = 0.25 * hmax, length = 0.0;
    for (int step = 0; step < opt.max_steps; ++step) {
      // near a critical point the corrector can land on another branch; heading
      // straight into one (cone rays are >= pi/4 apart) ends the walk there
      for (const cplx c : crit) {
        const double dc = std::abs(z - c);
        if (dc <= 1e-3 * (1.0 + std::abs(c)) && dc > 0.0 &&
            std::acos(std::clamp(dot(t, (c - z) / dc), -1.0, 1.0)) <= opt.max_turn) {
          pts.push_back(c);
          return End::critical_point;
        }
        h = std::min(h, std::max(0.5 * dc, 4.0 * hmin));
      }
      cplx zp = z + h * t;
      bool ok = correct(L, zp, opt.corrector_tol);
      cplx tn;
      if (ok) {
        tn = unit_tangent(L, zp);
        if (dot(tn, t) < 0.0) tn = -tn;
        const double turn = std::acos(std::clamp(dot(tn, t), -1.0, 1.0));
        ok = turn <= opt.max_turn && std::abs(zp - z) <= 2.0 * h;
        // a step past both a fold and the x floor hides which one comes first
        if (ok && t.real() * tn.real() < 0.0 && zp.real() < x_floor - 1e-9 * (1.0 + std::abs(x_floor))) ok = false;
        // localize folds before stopping at one
        if (ok && opt.stop_at_vertical && t.real() * tn.real() < 0.0 && h > 1e-7 * (1.0 + radius)) ok = false;
      }
      if (!ok) {
        h *= 0.5;
        if (h < hmin) throw Error(ErrorKind::CorrectorDiverged, "step size underflow during continuation");
        continue;
      }
      for (const cplx c : crit)
        if (segment_distance(z, zp, c) <= opt.critical_snap * (1.0 + std::abs(c))) {
          pts.push_back(c);
          return End::critical_point;
        }
      const bool flipped = t.real() * tn.real() < 0.0;
      pts.push_back(zp);
      if (flipped) vert.push_back(pts.size() - 1);
      length += std::abs(zp - z);
      z = zp;
      t = tn;
      if (zp.real() <= x_floor) return End::x_floor;
      if (opt.stop_at_axis && zp.real() < 0.0) return End::y_axis;
      if (flipped && opt.stop_at_vertical) return End::vertical_slope;
      if (std::abs(zp) > radius || (opt.max_length > 0.0 && length >= opt.max_length)) return End::radius_bound;
      if (length > 4.0 * hmax && std::abs(zp - start) < 0.5 * h) return End::closed_loop;
      h = std::min(1.5 * h, hmax);
    }
    return End::radius_bound;
  }
};

Termination public_end(End e) {
  switch (e) {
    case End::y_axis: return Termination::y_axis;
    case End::critical_point: return Termination::critical_point;
    case End::vertical_slope: return Termination::vertical_slope;
    case End::closed_loop: return Termination::closed_loop;
    default: return Termination::radius_bound;
  }
}

std::vector<cplx> singular_points(const Level& L) {
  std::vector<cplx> out;
  if (L.dg.degree() >= 1)
    for (const auto& r : roots(L.dg)) out.push_back(r.location);
  return out;
}

double resolve_radius(const ComplexPolynomial& w, const TraceOptions& opt) {
  return opt.radius > 0.0 ? opt.radius : default_radius(w);
}

double slope_of(cplx t) {
  const double dx = std::abs(t.real());
  return dx > 0.0 ? std::abs(t.imag()) / dx : std::numeric_limits<double>::max();
}

}  // namespace

Polyline trace_level(const ComplexPolynomial& w, CurveKind kind, cplx seed, const TraceOptions& opt) {
  const Level L(w, kind);
  if (std::abs(L.F(seed)) > L.tol(seed, opt.seed_tol))
    throw Error(ErrorKind::SeedNotOnCurve, "seed is not on the requested curve");
  if (!correct(L, seed, opt.corrector_tol)) throw Error(ErrorKind::CorrectorDiverged, "seed correction failed");
  const double radius = resolve_radius(w, opt);
  Walker walker{L, opt, radius, opt.max_step > 0.0 ? opt.max_step : radius / 200.0, singular_points(L)};
  const cplx t = unit_tangent(L, seed);

  Polyline out;
  out.curve_kind = kind;
  std::vector<cplx> fwd{seed}, bwd;
  std::vector<std::size_t> vf, vb;
  const End ef = walker.walk(seed, t, fwd, vf);
  End eb = ef;
  if (ef != End::closed_loop) eb = walker.walk(seed, -t, bwd, vb);

  out.points.assign(bwd.rbegin(), bwd.rend());
  const std::size_t nb = bwd.size();
  for (auto j : vb) out.vertical_indices.push_back(nb - 1 - j);
  out.points.insert(out.points.end(), fwd.begin(), fwd.end());
  for (auto j : vf) out.vertical_indices.push_back(nb + j);
  std::sort(out.vertical_indices.begin(), out.vertical_indices.end());
  out.terminated_by = public_end(ef);
  out.start_terminated_by = ef == End::closed_loop ? Termination::closed_loop : public_end(eb);
  return out;
}

std::optional<double> level_point_on_line(const ComplexPolynomial& w, double x, double y) {
  const ComplexPolynomial dw = w.derivative();
  for (int it = 0; it < 100; ++it) {
    const cplx z(x, y);
    const double f = w(z).imag(), df = dw(z).real();
    if (f == 0.0) return y;
    if (df == 0.0) return std::nullopt;
    const double step = f / df;
    y -= step;
    if (!std::isfinite(y)) return std::nullopt;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(y))) return y;
  }
  return std::abs(w(cplx(x, y)).imag()) <= 1e-12 * (1.0 + w.magnitude(cplx(x, y))) ? std::optional(y) : std::nullopt;
}

std::optional<cplx> locate_vertical_point(const ComplexPolynomial& w, cplx z) {
  const ComplexPolynomial d1 = w.derivative(), d2 = d1.derivative();
  double last = kInf;
  for (int it = 0; it < 100; ++it) {
    const cplx v1 = d1(z), v2 = d2(z);
    // F1 = Im w, grad (Im w', Re w'); F2 = Re w', grad (Re w'', -Im w'')
    const double f1 = w(z).imag(), f2 = v1.real();
    const double a = v1.imag(), b = v1.real(), c = v2.real(), d = -v2.imag();
    const double det = a * d - b * c;
    if (det == 0.0) return std::nullopt;
    const double dx = (d * f1 - b * f2) / det, dy = (-c * f1 + a * f2) / det;
    z -= cplx(dx, dy);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    last = std::hypot(dx, dy);
    if (last <= 1e-15 * (1.0 + std::abs(z))) return z;
  }
  // rounding noise can keep the last digits moving
  if (last <= 1e-11 * (1.0 + std::abs(z))) return z;
  return std::nullopt;
}

GraphCheck graphical_connection(const BoundaryData& d, const TraceOptions& opt_in) {
  TraceOptions opt = opt_in;
  opt.stop_at_vertical = true;
  opt.stop_at_axis = true;
  const Level L(d.w, CurveKind::level_C0);
  const double a = d.z1.real();
  const double radius =
      opt.radius > 0.0 ? opt.radius
                       : std::max(default_radius(d.w), 2.0 * std::max(std::abs(d.z1), std::abs(d.z2)));
  GraphCheck out;
  out.arrival = d.z2;
  out.arc = {d.z2};
  cplx t = unit_tangent(L, d.z2);
  if (!(std::abs(t.real()) > 1e-12)) return out;  // vertical tangent at z2
  if (t.real() > 0.0) t = -t;

  Walker walker{L, opt, radius, opt.max_step > 0.0 ? opt.max_step : radius / 200.0, {}, a};
  const ComplexPolynomial dw = d.w.derivative();
  std::vector<RootWithMultiplicity> crit;
  if (dw.degree() >= 1) crit = roots(dw);
  for (const auto& r : crit) walker.crit.push_back(r.location);

  std::vector<std::size_t> vert;
  auto& pts = out.arc;
  const End end = walker.walk(d.z2, t, pts, vert);
  const double snap = opt.connect_snap * (1.0 + std::abs(d.z1));
  double end_slope = 0.0;
  bool replaced_tail = true;
  switch (end) {
    case End::x_floor: {
      const cplx zl = pts[pts.size() - 2], zr = pts.back();
      const double s = (a - zl.real()) / (zr.real() - zl.real());
      const auto y = level_point_on_line(d.w, a, (zl + s * (zr - zl)).imag());
      if (!y) throw Error(ErrorKind::CorrectorDiverged, "could not land on the vertical line Re z = a");
      pts.back() = cplx(a, *y);
      out.connected = std::abs(pts.back() - d.z1) <= snap;
      end_slope = slope_of(unit_tangent(L, pts.back()));
      break;
    }
    case End::vertical_slope: {
      const auto zt = locate_vertical_point(d.w, pts.back());
      if (!zt) throw Error(ErrorKind::CorrectorDiverged, "could not locate the vertical-slope point");
      pts.back() = *zt;
      out.connected = std::abs(*zt - d.z1) <= snap;
      end_slope = std::numeric_limits<double>::max();
      break;
    }
    case End::critical_point: {
      const cplx c = pts.back();
      out.connected = std::abs(c - d.z1) <= snap;
      // slope of the cone ray the arc arrived along
      int k = 1;
      for (const auto& r : crit)
        if (r.location == c) k = r.multiplicity;
      const cplx beta = dw.taylor_shift(c).coeff(k);
      const double dir = std::arg(pts[pts.size() - 2] - c);
      double best = kInf, theta = dir;
      for (int m = 0; m < 2 * (k + 1); ++m) {
        const double th = (m * std::numbers::pi - std::arg(beta)) / (k + 1);
        const double gap = std::abs(std::remainder(th - dir, 2.0 * std::numbers::pi));
        if (gap < best) best = gap, theta = th;
      }
      end_slope = slope_of(std::polar(1.0, theta));
      break;
    }
    default:
      replaced_tail = false;
      break;
  }
  if (replaced_tail) {
    // fold refinement leaves steps whose dx is below corrector noise
    const cplx e = pts.back();
    std::size_t keep = pts.size() - 1;
    while (keep > 1 && std::abs(pts[keep - 1] - e) <= 1e-5 * (1.0 + std::abs(e))) --keep;
    pts.erase(pts.begin() + keep, pts.end() - 1);
  }
  out.arrival = pts.back();
  out.min_dx_per_step = kInf;
  for (std::size_t i = 1; i < pts.size(); ++i)
    out.min_dx_per_step = std::min(out.min_dx_per_step, pts[i - 1].real() - pts[i].real());
  const std::size_t interior = replaced_tail ? pts.size() - 1 : pts.size();
  for (std::size_t i = 0; i < interior; ++i) out.slope_sup = std::max(out.slope_sup, slope_of(unit_tangent(L, pts[i])));
  out.slope_sup = std::max(out.slope_sup, end_slope);
  out.end_slope = end_slope;
  out.graphical = out.connected && out.min_dx_per_step > 0.0;
  return out;
}

Verdict oracle_verdict(const GraphCheck& g, double slope_cap) {
  if (!g.connected || !g.graphical) return Verdict::unstable;
  return g.end_slope > slope_cap ? Verdict::strictly_semistable : Verdict::stable;
}

std::vector<double> branch_angles(const ComplexPolynomial& w, CurveKind kind, cplx c) {
  const Level L(w, kind);
  const auto q = L.g.taylor_shift(c).coeffs();
  double mag = 0.0;
  for (const auto& v : q) mag += std::abs(v);
  int K = 1;
  while (K < static_cast<int>(q.size()) && std::abs(q[K]) <= 1e-10 * mag) ++K;
  if (K >= static_cast<int>(q.size())) return {};
  std::vector<double> out;
  for (int m = 0; m < 2 * K; ++m)
    out.push_back(std::remainder((std::numbers::pi / 2 + m * std::numbers::pi - std::arg(q[K])) / K,
                                 2.0 * std::numbers::pi));
  std::sort(out.begin(), out.end());
  return out;
}

Polyline trace_branch(const ComplexPolynomial& w, CurveKind kind, cplx c, double theta, double length,
                      const TraceOptions& opt_in) {
  TraceOptions opt = opt_in;
  opt.max_length = length;
  const Level L(w, kind);
  const double rho = std::min(1e-3, 0.1 * length) * (1.0 + std::abs(c));
  const cplx dir = std::polar(1.0, theta);
  cplx seed = c + rho * dir;
  if (!correct(L, seed, opt.corrector_tol)) throw Error(ErrorKind::CorrectorDiverged, "branch seed correction failed");
  const double radius = std::max(resolve_radius(w, opt), 2.0 * (std::abs(c) + length));
  Walker walker{L, opt, radius, opt.max_step > 0.0 ? opt.max_step : std::min(radius / 200.0, 0.05 * length), {}};
  for (const cplx s : singular_points(L))
    if (std::abs(s - c) > 4.0 * rho) walker.crit.push_back(s);
  cplx t = unit_tangent(L, seed);
  if (dot(t, dir) < 0.0) t = -t;
  Polyline out;
  out.curve_kind = kind;
  out.points = {c, seed};
  out.start_terminated_by = Termination::critical_point;
  out.terminated_by = public_end(walker.walk(seed, t, out.points, out.vertical_indices));
  return out;
}

}  // namespace lg
