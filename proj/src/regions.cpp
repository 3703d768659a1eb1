#include "levelgraph/regions.hpp"

#include "levelgraph/errors.hpp"

namespace lg {

std::vector<std::optional<HalfInteger>> label_points(const ComplexPolynomial& w, const std::vector<cplx>& pts,
                                                     const LandscapeOptions& opt, Exec exec) {
  const auto crit = validate_no_rhp_critical_points(w, opt);
  const double scale = critical_scale(crit);
  const auto axis = on_axis_critical_points(w, opt);
  std::vector<std::optional<HalfInteger>> out(pts.size());
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (long i = 0; i < n; ++i) {
    const cplx z = pts[i];
    if (z.real() < 0.0) continue;
    try {
      out[i] = counting_function(w, z, axis, scale, opt).value;
    } catch (const Error&) {
    }
  }
  return out;
}

RegionSample sample_regions(const ComplexPolynomial& w, const Rect& g, const LandscapeOptions& opt, Exec exec) {
  if (g.nx < 1 || g.ny < 1 || !(g.x1 >= g.x0) || !(g.y1 >= g.y0))
    throw Error(ErrorKind::InvalidInput, "empty sampling rectangle");
  RegionSample s;
  s.points.reserve(static_cast<std::size_t>(g.nx) * g.ny);
  const double hx = g.nx > 1 ? (g.x1 - g.x0) / (g.nx - 1) : 0.0;
  const double hy = g.ny > 1 ? (g.y1 - g.y0) / (g.ny - 1) : 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s.points.emplace_back(g.x0 + i * hx, g.y0 + j * hy);
  s.labels = label_points(w, s.points, opt, exec);
  return s;
}

}  // namespace lg
