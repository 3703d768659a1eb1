#include "levelgraph/landscape.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "levelgraph/errors.hpp"

namespace lg {

const char* to_string(Genericity g) { return g == Genericity::generic ? "generic" : "non_generic"; }

double critical_scale(const std::vector<RootWithMultiplicity>& crit) {
  double m = 0.0;
  for (const auto& r : crit) m = std::max(m, std::abs(r.location));
  return 1.0 + m;
}

std::vector<RootWithMultiplicity> validate_no_rhp_critical_points(const ComplexPolynomial& w,
                                                                  const LandscapeOptions& opt) {
  if (w.degree() < 1) throw Error(ErrorKind::InvalidInput, "w must have degree >= 1");
  const ComplexPolynomial dw = w.derivative();
  if (dw.degree() < 1) return {};
  auto crit = roots(dw);
  const double band = opt.axis_snap * critical_scale(crit);
  for (const auto& r : crit) {
    if (r.location.real() > band) {
      std::ostringstream os;
      os.precision(17);
      os << "critical point " << r.location.real() << (r.location.imag() < 0 ? "" : "+") << r.location.imag()
         << "i in the open right half-plane";
      throw Error(ErrorKind::CriticalPointInRHP, os.str());
    }
  }
  return crit;
}

namespace {

std::vector<CriticalPoint> axis_points(const ComplexPolynomial& w, const std::vector<RootWithMultiplicity>& crit,
                                       const LandscapeOptions& opt) {
  const ComplexPolynomial dw = w.derivative();
  const double band = opt.axis_snap * critical_scale(crit);
  std::vector<CriticalPoint> out;
  for (const auto& r : crit) {
    if (std::abs(r.location.real()) > band) continue;
    CriticalPoint c;
    c.y0 = r.location.imag();
    c.order = r.multiplicity;
    c.leading_coeff = dw.taylor_shift(cplx(0.0, c.y0)).coeff(c.order);
    const cplx ik = std::pow(cplx(0.0, 1.0), c.order);
    c.genericity = std::abs((c.leading_coeff * ik).real()) < opt.genericity_tol * std::abs(c.leading_coeff)
                       ? Genericity::non_generic
                       : Genericity::generic;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.y0 < b.y0; });
  return out;
}

}  // namespace

std::vector<CriticalPoint> on_axis_critical_points(const ComplexPolynomial& w, const LandscapeOptions& opt) {
  return axis_points(w, validate_no_rhp_critical_points(w, opt), opt);
}

TangentConeAtInfinity tangent_cone_at_infinity(const ComplexPolynomial& w, double tol) {
  if (w.degree() < 1) throw Error(ErrorKind::InvalidInput, "w must have degree >= 1");
  const int n = w.degree();
  const cplx beta = w.leading();
  TangentConeAtInfinity t;
  t.vertex = -w.coeff(n - 1) / (static_cast<double>(n) * beta);
  const double pi = std::numbers::pi;
  for (int m = -2 * n - 2; m <= 2 * n + 2; ++m) {
    const double psi = (m * pi - std::arg(beta)) / n;
    if (psi > -pi / 2 && psi <= pi / 2) t.ray_angles.push_back(psi);
  }
  std::sort(t.ray_angles.begin(), t.ray_angles.end());
  const cplx in = std::pow(cplx(0.0, 1.0), n);
  t.genericity = std::abs((beta * in).imag()) < tol * std::abs(beta) ? Genericity::non_generic : Genericity::generic;
  return t;
}

RationalFunction vertical_ratio(const ComplexPolynomial& w, double x0) {
  auto line = restrict_to_vertical_line(w.derivative(), x0);
  return {line.im, line.re};
}

CountingResult counting_function(const ComplexPolynomial& w, cplx z0, const std::vector<CriticalPoint>& axis_crit,
                                 double crit_scale, const LandscapeOptions& opt) {
  double x0 = z0.real();
  const double y0 = z0.imag();
  const double band = opt.axis_snap * crit_scale;
  if (x0 < -band) throw Error(ErrorKind::InvalidInput, "counting function needs Re(z0) >= 0");
  const bool on_axis = std::abs(x0) <= band;
  if (on_axis) x0 = 0.0;

  const RationalFunction R = vertical_ratio(w, x0);
  const double ref = w.derivative().scale();
  bool degenerate = true;
  for (double c : R.den.coeffs()) degenerate = degenerate && std::abs(c) <= opt.degenerate_tol * ref;
  if (degenerate) throw Error(ErrorKind::DegenerateLine, "Re w'(x0+iy) vanishes identically");

  CountingResult out;
  out.interval_index = index_on_interval(R, -kInf, y0, opt.index);
  if (on_axis)
    for (const auto& c : axis_crit)
      if (c.y0 <= y0 + opt.critical_snap * (1.0 + std::abs(y0))) out.crit_sum += c.order;
  out.value = out.interval_index.abs() + HalfInteger::whole(out.crit_sum + 1);
  return out;
}

CountingResult counting_function(const ComplexPolynomial& w, cplx z0, const LandscapeOptions& opt) {
  const auto crit = validate_no_rhp_critical_points(w, opt);
  return counting_function(w, z0, axis_points(w, crit, opt), critical_scale(crit), opt);
}

}  // namespace lg
