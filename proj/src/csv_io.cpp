#include "levelgraph/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

#include "levelgraph/errors.hpp"

namespace lg {

namespace {

// shortest text that reads back to the same double
std::string fmt(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

void write_polylines_csv(std::ostream& os, const std::vector<Polyline>& lines) {
  const bool many = lines.size() > 1;
  os << (many ? "curve,re,im\n" : "re,im\n");
  for (std::size_t c = 0; c < lines.size(); ++c)
    for (const cplx z : lines[c].points) {
      if (many) os << c << ',';
      os << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
    }
}

void write_flow_csv(std::ostream& os, const FlowTrace& t) {
  os << "t,J,residual_sup,membership_min\n";
  for (std::size_t i = 0; i < t.times.size(); ++i)
    os << fmt(t.times[i]) << ',' << fmt(t.J_values[i]) << ',' << fmt(t.residual_sup[i]) << ','
       << fmt(t.membership_min[i]) << '\n';
}

void write_graph_csv(std::ostream& os, const GridFunction& f) {
  os << "x,f\n" << fmt(f.grid->a) << ',' << fmt(f.p) << '\n';
  for (std::size_t i = 0; i < f.values.size(); ++i) os << fmt(f.grid->x[i]) << ',' << fmt(f.values[i]) << '\n';
  os << fmt(f.grid->b) << ',' << fmt(f.q) << '\n';
}

std::vector<std::pair<double, double>> read_xy_csv(std::istream& is) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x >> y)) {
      if (lineno == 1) continue;  // header
      throw Error(ErrorKind::InvalidInput, "bad CSV row " + std::to_string(lineno));
    }
    out.emplace_back(x, y);
  }
  return out;
}

}  // namespace lg
