#pragma once

#include <optional>
#include <vector>

#include "levelgraph/exec.hpp"
#include "levelgraph/landscape.hpp"

namespace lg {

struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 16, ny = 16;
};

struct RegionSample {
  std::vector<cplx> points;                       // row-major, x fastest
  std::vector<std::optional<HalfInteger>> labels;  // nullopt where counting raised
};

// N at each point; points with Re < 0 or whose index probe is indeterminate get nullopt.
std::vector<std::optional<HalfInteger>> label_points(const ComplexPolynomial& w, const std::vector<cplx>& pts,
                                                     const LandscapeOptions& opt = {}, Exec exec = Exec::parallel);

RegionSample sample_regions(const ComplexPolynomial& w, const Rect& grid, const LandscapeOptions& opt = {},
                            Exec exec = Exec::parallel);

}  // namespace lg
