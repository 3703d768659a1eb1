#include "levelgraph/stability.hpp"

#include "levelgraph/errors.hpp"

namespace lg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::strictly_semistable: return "strictly_semistable";
    case Verdict::unstable: return "unstable";
  }
  return "?";
}

const char* to_string(CriticalCase c) {
  switch (c) {
    case CriticalCase::noncritical: return "noncritical";
    case CriticalCase::generic_critical: return "generic_critical";
    case CriticalCase::nongeneric_critical: return "nongeneric_critical";
  }
  return "?";
}

BoundaryData shift_to_zero_level(const BoundaryData& data, double level_tol) {
  const cplx w1 = data.w(data.z1), w2 = data.w(data.z2);
  if (std::abs(w1.imag() - w2.imag()) > level_tol * (1.0 + std::abs(w1) + std::abs(w2)))
    throw Error(ErrorKind::LevelMismatch, "Im w(z1) = " + std::to_string(w1.imag()) +
                                              " but Im w(z2) = " + std::to_string(w2.imag()));
  BoundaryData out = data;
  if (w1.imag() != 0.0) out.w = data.w - ComplexPolynomial{cplx(0.0, w1.imag())};
  return out;
}

bool normalize_sign(ComplexPolynomial& w, cplx z2) {
  if (w.derivative()(z2).real() < 0.0) {
    w = -w;
    return true;
  }
  return false;
}

Verdict decide(HalfInteger n1, HalfInteger n2, CriticalCase kase, int order) {
  if (!n2.is_integer()) return Verdict::unstable;
  const HalfInteger k = HalfInteger::whole(order), h = HalfInteger::half();
  switch (kase) {
    case CriticalCase::noncritical: {
      const HalfInteger d = (n1 - n2).abs();
      if (d == HalfInteger{}) return Verdict::stable;
      if (d == h) return Verdict::strictly_semistable;
      return Verdict::unstable;
    }
    case CriticalCase::generic_critical:
      return n2 >= n1 - k && n2 <= n1 ? Verdict::stable : Verdict::unstable;
    case CriticalCase::nongeneric_critical:
      if (n2 >= n1 - k + h && n2 <= n1 - h) return Verdict::stable;
      if (n2 == n1 - k - h || n2 == n1 + h) return Verdict::strictly_semistable;
      return Verdict::unstable;
  }
  return Verdict::unstable;
}

StabilityVerdict classify(const BoundaryData& data, const ClassifyOptions& opt) {
  if (!(data.z1.real() >= 0.0 || std::abs(data.z1.real()) <= opt.landscape.axis_snap) ||
      !(data.z2.real() > data.z1.real()))
    throw Error(ErrorKind::InvalidBoundaryData, "need 0 <= Re z1 < Re z2");
  BoundaryData d = shift_to_zero_level(data, opt.level_tol);
  const auto crit = validate_no_rhp_critical_points(d.w, opt.landscape);
  const double scale = critical_scale(crit);
  const auto axis = on_axis_critical_points(d.w, opt.landscape);

  StabilityVerdict v;
  v.normalized = normalize_sign(d.w, d.z2);
  v.cone_at_infinity = tangent_cone_at_infinity(d.w).genericity;

  const bool z1_on_axis = std::abs(d.z1.real()) <= opt.landscape.axis_snap * scale;
  if (z1_on_axis)
    for (const auto& c : axis)
      if (std::abs(d.z1.imag() - c.y0) <= opt.landscape.critical_snap * scale) {
        v.kase = c.genericity == Genericity::generic ? CriticalCase::generic_critical
                                                     : CriticalCase::nongeneric_critical;
        v.critical_order = c.order;
        d.z1 = cplx(0.0, c.y0);
      }

  const auto c1 = counting_function(d.w, d.z1, axis, scale, opt.landscape);
  const auto c2 = counting_function(d.w, d.z2, axis, scale, opt.landscape);
  v.n1 = c1.value;
  v.n2 = c2.value;
  v.index1 = c1.interval_index;
  v.index2 = c2.interval_index;
  v.crit_sum1 = c1.crit_sum;
  v.z2_on_boundary = !v.n2.is_integer();
  v.verdict = decide(v.n1, v.n2, v.kase, v.critical_order.value_or(0));
  return v;
}

}  // namespace lg
