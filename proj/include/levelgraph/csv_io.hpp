#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "levelgraph/kempf_ness.hpp"
#include "levelgraph/tracer.hpp"

namespace lg {

// columns re,im; several polylines are separated by a `curve` column when more than one is given
void write_polylines_csv(std::ostream& os, const std::vector<Polyline>& lines);

// columns t,J,residual_sup,membership_min
void write_flow_csv(std::ostream& os, const FlowTrace& t);

// columns x,f with the two endpoints included
void write_graph_csv(std::ostream& os, const GridFunction& f);

// (x, f) samples from a two-column CSV with optional header
std::vector<std::pair<double, double>> read_xy_csv(std::istream& is);

}  // namespace lg
