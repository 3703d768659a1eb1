#include "levelgraph/calabi_dhym.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "levelgraph/errors.hpp"
#include "levelgraph/tracer.hpp"

namespace lg {

namespace {

constexpr double kPi = std::numbers::pi;

cplx minus_i_pow(int k) {
  static const cplx table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return table[((k % 4) + 4) % 4];
}

struct Unwrapped {
  double lift = 0.0;
  int crossings = 0;
};

struct TRoot {
  cplx tau;  // zero of the path polynomial in the complex t-plane
  int mult;
};

double segment_distance(double t0, double t1, cplx tau) {
  const double t = std::clamp(tau.real(), std::min(t0, t1), std::max(t0, t1));
  return std::abs(cplx(t, 0.0) - tau);
}

// Continues the argument of Z from t_from down to t_to, starting at lift L.
// Z(t) = c F(t) with F a polynomial in t whose zeros are `roots`, so the phase speed
// on a step is at most sum mult / dist(zero, step); steps keep the turn below pi/8.
// Crossings of the line R dir are counted with sign (+1 when turning counterclockwise in t).
Unwrapped unwrap(const std::function<cplx(double)>& Z, const std::vector<TRoot>& roots, double t_from, double t_to,
                 double L, cplx dir) {
  Unwrapped u{L, 0};
  double t = t_from, h = (t_from - t_to) / 64.0;
  cplx zt = Z(t);
  auto side = [&](cplx z) {
    const double s = (z * std::conj(dir)).imag();
    return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
  };
  int last = side(zt);
  while (t > t_to) {
    double tn = std::max(t_to, t - h);
    for (;;) {
      double speed = 0.0;
      for (const auto& rt : roots) speed += rt.mult / segment_distance(tn, t, rt.tau);
      if ((t - tn) * speed <= kPi / 8.0) break;
      h = 0.9 * (kPi / 8.0) / speed;
      if (h < 1e-15 * (1.0 + std::abs(t_from))) throw Error(ErrorKind::LiftInconsistency, "phase unwrapping stalled");
      tn = std::max(t_to, t - h);
    }
    const cplx zn = Z(tn);
    const double d = std::arg(zn / zt);
    u.lift += d;
    const int s = side(zn);
    if (s != 0) {
      // going down in t; a turn of -d in increasing t
      if (last != 0 && s != last) u.crossings += d < 0.0 ? 1 : -1;
      last = s;
    }
    t = tn;
    zt = zn;
    h = std::min(1.5 * h, t_from - t_to);
  }
  return u;
}

// Past every real zero of Re w'(x0 + it), and far enough out for the tangent-cone regime.
double truncation(const ComplexPolynomial& dw, double x0, double base) {
  const RealPolynomial re = restrict_to_vertical_line(dw, x0).re;
  double T = base;
  if (re.degree() >= 1)
    for (const auto& r : real_roots(re)) T = std::max(T, 2.0 * std::abs(r.location.real()) + 1.0);
  return T;
}

double anchored_lift(const std::function<cplx(double)>& Z, double T) {
  const double a1 = std::arg(-Z(T)), a2 = std::arg(-Z(2.0 * T));
  // the tail must already hug the negative real axis and keep closing in on it
  if (!(std::abs(a1) < kPi / 4.0) || std::abs(a2) > std::abs(a1) + 1e-12)
    throw Error(ErrorKind::LiftInconsistency, "path has not settled at the truncation point");
  return kPi + a1;
}

HalfInteger count_from_index(HalfInteger signed_index) { return -signed_index; }

}  // namespace

void validate(const CalabiInput& in) {
  if (in.m < 1 || in.r < 0) throw Error(ErrorKind::InvalidInput, "need m >= 1 and r >= 0");
  if (!(in.xi1 > 0.0) || !(in.b > 0.0))
    throw Error(ErrorKind::InvalidInput, "Kahler conditions need xi1 > 0 and b > 0");
  if (!std::isfinite(in.xi2) || !std::isfinite(in.q) || !std::isfinite(in.xi1) || !std::isfinite(in.b))
    throw Error(ErrorKind::InvalidInput, "non-finite input");
}

CalabiPolynomials build_polynomials(const CalabiInput& in) {
  validate(in);
  ComplexPolynomial dP = pow(ComplexPolynomial{in.xi(), cplx(1.0)}, in.m) * pow(ComplexPolynomial{0.0, 1.0}, in.r);
  CalabiPolynomials out;
  out.P = dP.antiderivative();
  const cplx pz = out.P(in.z2());
  if (std::abs(pz) <= 1e-12 * out.P.magnitude(in.z2()))
    throw Error(ErrorKind::ZeroTotalCharge, "P(b + iq) vanishes, the average angle is undefined");
  out.theta_hat = std::arg(pz);
  out.w = out.P * std::polar(1.0, -out.theta_hat);
  const cplx wz = out.w(in.z2());
  if (std::abs(wz.imag()) > 1e-9 * std::abs(wz))
    throw Error(ErrorKind::LiftInconsistency, "Im w(b + iq) does not vanish");
  return out;
}

Charges compute_charges(const CalabiInput& in, const CalabiPolynomials& poly) {
  const int m = in.m, r = in.r;
  const cplx z2 = in.z2(), xi = in.xi();
  Charges c;
  c.Z_X = -minus_i_pow(m + r + 1) * poly.P(z2);
  c.Z_Dinf = -minus_i_pow(m + r) * std::pow(z2, r) * std::pow(z2 + xi, m);
  c.Z_P = -minus_i_pow(m) * std::pow(xi, m);
  return c;
}

Lifts compute_lifts(const CalabiInput& in, const CalabiPolynomials& poly, const Charges& ch, const DhymOptions& opt) {
  const int m = in.m, r = in.r, A = m + r + 1;
  const ComplexPolynomial dw = poly.w.derivative();
  const cplx rot = std::polar(1.0, poly.theta_hat);
  Lifts L;

  const double lo = A * kPi / 2.0 - kPi, hi = A * kPi / 2.0;
  L.theta_top = poly.theta_hat + std::ceil((lo - poly.theta_hat) / kPi) * kPi;
  if (L.theta_top >= hi) L.theta_top -= kPi;
  if (L.theta_top < lo) L.theta_top += kPi;

  const auto Rb = vertical_ratio(poly.w, in.b);
  L.ind_Rb = count_from_index(index_on_interval(Rb, in.q, kInf, opt.landscape.index));

  // leading Taylor coefficient of w' at 0, times i^r: its real part vanishes iff the cone holds a vertical line
  const cplx lead0 = std::polar(1.0, -poly.theta_hat) * std::pow(in.xi(), m) * std::pow(cplx(0, 1), r);
  L.genericity = std::abs(lead0.real()) < opt.genericity_tol * std::pow(std::abs(in.xi()), m) ? Genericity::non_generic
                                                                                               : Genericity::generic;
  const auto R0 = vertical_ratio(poly.w, 0.0);
  const RealPolynomial re0 = restrict_to_vertical_line(dw, 0.0).re;
  L.epsilon = 0.0;
  if (L.genericity == Genericity::non_generic) {
    double first = kInf;
    for (const auto& rt : real_roots(re0)) {
      const double t = rt.location.real();
      if (t > 1e-9 * (1.0 + std::abs(in.xi()))) first = std::min(first, t);
    }
    L.epsilon = std::isfinite(first) ? 0.5 * first : 1.0;
  }
  L.ind_R0 = count_from_index(index_on_interval(R0, L.epsilon, kInf, opt.landscape.index));

  L.Theta_lift = L.theta_top - L.ind_Rb.to_double() * kPi;
  L.phi_X = (L.Theta_lift - A * kPi / 2.0 + kPi) / kPi;

  // the lift path for X ends on the line of Z_X, on the side of -Z_X when Re w'(z2) < 0
  const cplx x_end = -minus_i_pow(A) * std::polar(1.0, L.Theta_lift);
  L.x_lift_reversed = (x_end * std::conj(ch.Z_X)).real() < 0.0;
  double delta = std::arg(ch.Z_Dinf) - std::arg(x_end);
  delta = std::fmod(delta + 4.0 * kPi, 2.0 * kPi);
  const bool z2_on_D0 = !L.ind_Rb.is_integer();
  if (!z2_on_D0 && !(delta > 0.0 && delta < kPi))
    throw Error(ErrorKind::LiftInconsistency, "arg Z_Dinf minus the lifted argument of X is outside (0, pi)");
  const double phi_Dinf_closed = L.phi_X + delta / kPi;

  const double scale = std::max({1.0, std::abs(in.xi()), in.b, std::abs(in.q)});
  const cplx sD = -minus_i_pow(m + r) * rot;
  auto ZD = [&](double t) { return sD * dw(cplx(in.b, t)); };
  auto ZP = [&](double t) {
    if (t == 0.0) return ch.Z_P;
    return sD * dw(cplx(0.0, t)) / std::pow(t, r);
  };

  // w' has zeros 0 (order r) and -xi (order m); in t they sit at -i(rho - x0)
  const std::vector<TRoot> rootsD{{cplx(0, 1) * (in.b - 0.0), r}, {cplx(0, 1) * (in.b + in.xi()), m}};
  const std::vector<TRoot> rootsP{{cplx(0, 1) * in.xi(), m}};
  const double TD = truncation(dw, in.b, 64.0 * scale) + std::abs(in.q);
  const Unwrapped uD = unwrap(ZD, rootsD, TD, in.q, anchored_lift(ZD, TD), ch.Z_X);
  L.path_crossings_Dinf = uD.crossings;
  L.phi_Dinf = uD.lift / kPi;
  if (!z2_on_D0 && std::abs(L.phi_Dinf - phi_Dinf_closed) > opt.lift_tol * (1.0 + std::abs(phi_Dinf_closed)))
    throw Error(ErrorKind::LiftInconsistency, "unwrapped grade of D_inf " + std::to_string(L.phi_Dinf) +
                                                     " disagrees with phi_X + delta/pi = " + std::to_string(phi_Dinf_closed));
  if (!z2_on_D0 && HalfInteger::whole(uD.crossings) != L.ind_Rb)
    throw Error(ErrorKind::LiftInconsistency, "crossings along the D_inf path disagree with ind_Rb");

  const double TP = truncation(dw, 0.0, 64.0 * scale);
  Unwrapped uP = unwrap(ZP, rootsP, TP, L.epsilon, anchored_lift(ZP, TP), ch.Z_X);
  L.path_crossings_P = uP.crossings;
  if (L.epsilon > 0.0) uP.lift = unwrap(ZP, rootsP, L.epsilon, 0.0, uP.lift, ch.Z_X).lift;
  L.phi_P = uP.lift / kPi;
  if (HalfInteger::whole(uP.crossings) != L.ind_R0)
    throw Error(ErrorKind::LiftInconsistency, "crossings along the P path (" + std::to_string(uP.crossings) +
                                                     ") disagree with ind_R0 = " + L.ind_R0.to_string());
  return L;
}

const char* to_string(Existence e) { return e == Existence::exists ? "exists" : "no_solution"; }

Decision decide_existence(const CalabiInput& in, const Lifts& L, const DhymOptions& opt) {
  Decision d;
  const HalfInteger r = HalfInteger::whole(in.r), one = HalfInteger::whole(1);
  const HalfInteger cb = L.ind_Rb, c0 = L.ind_R0;
  const double g = L.phi_P - L.phi_X;
  const double rr = static_cast<double>(in.r);
  if (!cb.is_integer()) {
    // b + iq on D0
    d.index_form = d.grade_form = Existence::no_solution;
  } else if (L.genericity == Genericity::generic) {
    d.index_form = c0 <= cb && cb <= c0 + r ? Existence::exists : Existence::no_solution;
    d.grade_form = g > 0.0 && g < rr + 1.0 ? Existence::exists : Existence::no_solution;
  } else {
    // here the grade difference is an integer
    const double gi = std::round(g);
    if (std::abs(g - gi) > opt.grade_tol * (1.0 + std::abs(g)))
      throw Error(ErrorKind::CrossCheckFailure, "non-generic grade difference is not an integer");
    d.index_form = c0 + one <= cb && cb <= c0 + r ? Existence::exists : Existence::no_solution;
    d.grade_form = gi >= 1.0 && gi < rr + 1.0 ? Existence::exists : Existence::no_solution;
    const bool index_edge = cb == c0 || cb == c0 + r + one;
    const bool grade_edge = gi == 0.0 || gi == rr + 1.0;
    if (index_edge != grade_edge) throw Error(ErrorKind::CrossCheckFailure, "boundary cases disagree");
    d.boundary = index_edge;
  }
  if (d.index_form != d.grade_form)
    throw Error(ErrorKind::CrossCheckFailure, "index form says " + std::string(to_string(d.index_form)) +
                                                  ", grade form says " + to_string(d.grade_form));
  d.verdict = d.index_form;
  return d;
}

ChargeReport analyze(const CalabiInput& in, const DhymOptions& opt) {
  const CalabiPolynomials poly = build_polynomials(in);
  const Charges ch = compute_charges(in, poly);
  const Lifts L = compute_lifts(in, poly, ch, opt);
  const Decision d = decide_existence(in, L, opt);
  ChargeReport rep;
  rep.theta_hat = poly.theta_hat;
  rep.theta_top = L.theta_top;
  rep.Theta_lift = L.Theta_lift;
  rep.Z_X = ch.Z_X;
  rep.Z_Dinf = ch.Z_Dinf;
  rep.Z_P = ch.Z_P;
  rep.phi_X = L.phi_X;
  rep.phi_Dinf = L.phi_Dinf;
  rep.phi_P = L.phi_P;
  rep.ind_R0 = L.ind_R0;
  rep.ind_Rb = L.ind_Rb;
  rep.genericity = L.genericity;
  rep.verdict = d.verdict;
  rep.boundary = d.boundary;
  rep.normalization_note =
      "charges scaled by D_inf^(r+1) D_H^m = 1; ind_R0 and ind_Rb count D0 crossings";
  if (L.genericity == Genericity::non_generic) rep.normalization_note += "; ind_R0 taken from epsilon";
  if (L.x_lift_reversed) rep.normalization_note += "; phi_X lifts the direction of -Z_X";
  rep.x_lift_reversed = L.x_lift_reversed;
  return rep;
}

Witness make_witness(const CalabiInput& in, const CalabiPolynomials& poly, const WitnessOptions& opt) {
  Witness wt;
  ComplexPolynomial w = poly.w;
  normalize_sign(w, in.z2());
  const BoundaryData data{w, cplx(0.0), in.z2()};
  const GraphCheck g = graphical_connection(data);
  wt.traced_connected = g.connected;
  wt.traced_graphical = g.graphical;
  wt.f_at_b = g.arc.front().imag();
  wt.f_at_0 = g.arrival.imag();

  const auto grid = make_grid(0.0, in.b, opt.nodes);
  wt.x = grid->x;
  const auto sigma = default_sigma(*grid);
  const FlowTrace tr = run_flow(straight_line(grid, 0.0, in.q), w, sigma, opt.flow);
  wt.f_flow = tr.final_f.values;
  wt.flow_converged = tr.converged;
  wt.flow_residual = tr.residual_sup.back();
  wt.in_M = membership(tr.final_f, w).in_M;
  if (g.connected && g.graphical) {
    wt.f_traced = traced_graph(grid, w, g, 0.0, in.q).values;
    for (std::size_t i = 0; i < wt.f_traced.size(); ++i)
      wt.max_deviation = std::max(wt.max_deviation, std::abs(wt.f_traced[i] - wt.f_flow[i]));
  }
  return wt;
}

}  // namespace lg

namespace lg {

std::vector<SweepEntry> analyze_many(const std::vector<CalabiInput>& inputs, const DhymOptions& opt, Exec exec) {
  std::vector<SweepEntry> out(inputs.size());
  const long n = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
  for (long i = 0; i < n; ++i) {
    try {
      out[i].report = analyze(inputs[i], opt);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  }
  return out;
}

}  // namespace lg
