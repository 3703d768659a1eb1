#include <gmpxx.h>

#include <cmath>
#include <vector>

#include "levelgraph/cauchy_index.hpp"
#include "levelgraph/errors.hpp"

namespace lg {

namespace {

using QPoly = std::vector<mpq_class>;  // ascending, no trailing zeros

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

QPoly to_q(const RealPolynomial& p) {
  QPoly q;
  for (double v : p.coeffs()) q.emplace_back(v);
  trim(q);
  return q;
}

int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  rem = a;
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  const int db = deg(b);
  for (int k = deg(a) - db; k >= 0; --k) {
    const mpq_class f = rem[k + db] / b.back();
    quot[k] = f;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b[j];
  }
  rem.resize(std::min<std::size_t>(rem.size(), db));
  trim(rem);
  trim(quot);
}

int sign_at(const QPoly& p, const mpq_class& x) {
  mpq_class acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

int sign_at_inf(const QPoly& p, bool negative) {
  const int s = sgn(p.back());
  return negative && deg(p) % 2 == 1 ? -s : s;
}

}  // namespace

HalfInteger index_on_interval_exact(const RationalFunction& h, double c, double d) {
  if (h.den.is_zero()) throw Error(ErrorKind::DenominatorIdenticallyZero, "den = 0");
  if (!(c < d)) throw Error(ErrorKind::InvalidInput, "interval endpoints must satisfy c < d");
  if (h.den.degree() == 0 || h.num.is_zero()) return {};
  std::vector<QPoly> seq{to_q(h.den), to_q(h.num)};
  for (;;) {
    QPoly quot, rem;
    divmod(seq[seq.size() - 2], seq.back(), quot, rem);
    if (rem.empty()) break;
    for (auto& v : rem) v = -v;
    seq.push_back(std::move(rem));
  }
  const QPoly g = seq.back();
  if (deg(g) >= 1)
    for (auto& p : seq) {
      QPoly quot, rem;
      divmod(p, g, quot, rem);
      p = std::move(quot);
    }
  auto twice_var = [&](double x) {
    std::vector<int> s;
    if (std::isinf(x)) {
      for (const auto& p : seq) s.push_back(sign_at_inf(p, x < 0));
    } else {
      const mpq_class qx(x);
      for (const auto& p : seq) s.push_back(sign_at(p, qx));
    }
    int v = 0;
    for (std::size_t k = 1; k < s.size(); ++k) {
      if (s[k - 1] * s[k] < 0) v += 2;
      else if ((s[k - 1] == 0) != (s[k] == 0)) v += 1;
    }
    return v;
  };
  return HalfInteger::from_twice(twice_var(c) - twice_var(d));
}

}  // namespace lg
