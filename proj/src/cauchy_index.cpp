#include "levelgraph/cauchy_index.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>
#include <string>

#include "levelgraph/errors.hpp"

namespace lg {

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

HalfInteger HalfInteger::parse(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      const long long n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return whole(n);
    }
    const long long n = std::stoll(s.substr(0, slash), &used);
    if (used != slash || s.substr(slash + 1) != "2") throw std::invalid_argument(s);
    return from_twice(n);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidInput, "not a half-integer: '" + s + "'");
  }
}

namespace {

// Zero band from the coefficient scale, floored by Horner rounding at the probe.
int sign_of(double v, double scale, double mag, const IndexOptions& opt) {
  const double band = std::max(opt.sign_tol * (1.0 + scale), 1e-13 * mag);
  const double a = std::abs(v);
  if (a <= band) return 0;
  if (a <= opt.gray_factor * band)
    throw Error(ErrorKind::IndeterminateSign, "value " + std::to_string(v) + " within the tolerance band");
  return v > 0 ? 1 : -1;
}

struct LocalOrder {
  int order;
  int sign;
};

// Order of vanishing of p at x and the sign of the first surviving derivative.
LocalOrder local_order(const RealPolynomial& p, double x, const IndexOptions& opt) {
  RealPolynomial d = p;
  for (int j = 0; !d.is_zero(); ++j) {
    const int s = sign_of(d(x), d.scale(), d.magnitude(x), opt);
    if (s != 0) return {j, s};
    d = d.derivative();
  }
  throw Error(ErrorKind::IndeterminateSign, "polynomial vanishes to every order within tolerance");
}

int derivative_sign(const RealPolynomial& p, double x, int order, const IndexOptions& opt) {
  RealPolynomial d = p;
  for (int j = 0; j < order; ++j) d = d.derivative();
  const int s = sign_of(d(x), d.scale(), d.magnitude(x), opt);
  if (s == 0) throw Error(ErrorKind::IndeterminateSign, "leading local coefficient vanishes");
  return s;
}

void check_interval(const RationalFunction& h, double c, double d) {
  if (h.den.is_zero()) throw Error(ErrorKind::DenominatorIdenticallyZero, "den = 0");
  if (!(c < d) || std::isnan(c) || std::isnan(d) || c == kInf || d == -kInf)
    throw Error(ErrorKind::InvalidInput, "interval endpoints must satisfy c < d");
}

// Contribution (in halves) given den vanishing to order md at x with leading sign sd.
HalfInteger one_sided_from_orders(const RationalFunction& h, double x, int md, int sd, Side side,
                                  const IndexOptions& opt) {
  if (md == 0 || h.num.is_zero()) return {};
  const LocalOrder n = local_order(h.num, x, opt);
  const int net = md - n.order;
  if (net <= 0) return {};
  int s = n.sign * sd;
  if (side == Side::minus && net % 2 == 1) s = -s;
  return HalfInteger::from_twice(s);
}

bool near(double x, double e, const IndexOptions& opt) {
  return std::isfinite(e) && std::abs(x - e) <= opt.endpoint_snap * (1.0 + std::abs(e));
}

}  // namespace

int multiplicity_at(const RealPolynomial& p, double x, const IndexOptions& opt) {
  return local_order(p, x, opt).order;
}

HalfInteger index_one_sided(const RationalFunction& h, double s, Side side, const IndexOptions& opt) {
  if (h.den.is_zero()) throw Error(ErrorKind::DenominatorIdenticallyZero, "den = 0");
  const LocalOrder d = local_order(h.den, s, opt);
  return one_sided_from_orders(h, s, d.order, d.sign, side, opt);
}

HalfInteger index_at_point(const RationalFunction& h, double s, const IndexOptions& opt) {
  return index_one_sided(h, s, Side::plus, opt) - index_one_sided(h, s, Side::minus, opt);
}

HalfInteger index_on_interval(const RationalFunction& h, double c, double d, const IndexOptions& opt) {
  check_interval(h, c, d);
  if (h.den.degree() == 0 || h.num.is_zero()) return {};
  HalfInteger total;
  if (std::isfinite(c)) total += index_one_sided(h, c, Side::plus, opt);
  if (std::isfinite(d)) total -= index_one_sided(h, d, Side::minus, opt);
  for (const auto& r : real_roots(h.den, opt.root_tol)) {
    const double x = r.location.real();
    const bool at_c = near(x, c, opt), at_d = near(x, d, opt);
    if (at_c || at_d) {
      const double e = at_c ? c : d;
      if (multiplicity_at(h.den, e, opt) == 0)
        throw Error(ErrorKind::IndeterminateSign, "denominator root within snap distance of an endpoint");
      continue;
    }
    if (x <= c || x >= d) continue;
    const int sd = derivative_sign(h.den, x, r.multiplicity, opt);
    total += one_sided_from_orders(h, x, r.multiplicity, sd, Side::plus, opt) -
             one_sided_from_orders(h, x, r.multiplicity, sd, Side::minus, opt);
  }
  return total;
}

namespace {

// The remainder chain runs in extended precision; with repeated roots the last
// double-precision remainder is often rounding noise just above any sane cutoff.
using Coeffs = std::vector<long double>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0.0L) c.pop_back();
}

void normalize(Coeffs& c) {
  long double m = 0.0L;
  for (long double v : c) m = std::max(m, std::abs(v));
  if (m > 0.0L)
    for (auto& v : c) v /= m;
}

Coeffs widen(const RealPolynomial& p) {
  Coeffs c(p.coeffs().begin(), p.coeffs().end());
  trim(c);
  normalize(c);
  return c;
}

// Quotient and remainder of a / b. With clean set, a remainder below 1e-9 of the largest
// subtracted term is cancellation noise and comes back empty.
std::pair<Coeffs, Coeffs> divmod(Coeffs r, const Coeffs& b, bool clean) {
  const int db = static_cast<int>(b.size()) - 1;
  const int da = static_cast<int>(r.size()) - 1;
  if (da < db) return {{}, r};
  Coeffs q(da - db + 1, 0.0L);
  long double big = 0.0L;
  for (long double v : r) big = std::max(big, std::abs(v));
  for (int k = da - db; k >= 0; --k) {
    const long double f = r[k + db] / b.back();
    q[k] = f;
    for (int j = 0; j <= db; ++j) {
      big = std::max(big, std::abs(f * b[j]));
      r[k + j] -= f * b[j];
    }
    r[k + db] = 0.0L;
  }
  r.resize(db);
  if (clean) {
    long double m = 0.0L;
    for (long double v : r) m = std::max(m, std::abs(v));
    if (m <= 1e-9L * big) r.clear();
    for (auto& v : r)
      if (std::abs(v) <= 1e-15L * big) v = 0.0L;
  }
  trim(r);
  return {q, r};
}

// Sum of variations in halves: 2 per strict sign change, 1 when exactly one entry is zero.
int variations_twice(const std::vector<int>& s) {
  int v = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k - 1] * s[k] < 0) v += 2;
    else if ((s[k - 1] == 0) != (s[k] == 0)) v += 1;
  }
  return v;
}

}  // namespace

HalfInteger index_on_interval_sturm(const RationalFunction& h, double c, double d, const IndexOptions& opt) {
  check_interval(h, c, d);
  if (h.den.degree() == 0 || h.num.is_zero()) return {};
  std::vector<Coeffs> seq{widen(h.den), widen(h.num)};
  for (;;) {
    Coeffs rem = divmod(seq[seq.size() - 2], seq.back(), true).second;
    if (rem.empty()) break;
    for (auto& v : rem) v = -v;
    normalize(rem);
    seq.push_back(std::move(rem));
  }
  const Coeffs g = seq.back();
  if (g.size() >= 2)
    for (auto& p : seq) {
      p = divmod(p, g, false).first;
      normalize(p);
    }

  auto twice_var = [&](double x) {
    std::vector<int> s;
    for (const auto& p : seq) {
      const int deg = static_cast<int>(p.size()) - 1;
      if (std::isinf(x)) {
        const int sl = p.back() > 0 ? 1 : -1;
        s.push_back(x < 0 && deg % 2 == 1 ? -sl : sl);
      } else {
        long double v = 0.0L, mag = 0.0L;
        for (int k = deg; k >= 0; --k) {
          v = v * x + p[k];
          mag = mag * std::abs(x) + std::abs(p[k]);
        }
        s.push_back(sign_of(static_cast<double>(v), 1.0, static_cast<double>(mag), opt));
      }
    }
    return variations_twice(s);
  };
  return HalfInteger::from_twice(twice_var(c) - twice_var(d));
}

}  // namespace lg
