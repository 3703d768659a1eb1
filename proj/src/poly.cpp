#include "levelgraph/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <numeric>

#include "levelgraph/errors.hpp"

namespace lg {

ComplexPolynomial to_complex(const RealPolynomial& p) {
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial pow(const ComplexPolynomial& p, int e) {
  ComplexPolynomial out{cplx(1.0)};
  for (int k = 0; k < e; ++k) out = out * p;
  return out;
}

ComplexPolynomial from_roots(const std::vector<cplx>& rs, cplx leading) {
  ComplexPolynomial out{leading};
  for (const auto& r : rs) out = out * ComplexPolynomial{-r, cplx(1.0)};
  return out;
}

LineRestriction restrict_to_vertical_line(const ComplexPolynomial& p, double x0) {
  const auto q = p.taylor_shift(cplx(x0)).coeffs();
  std::vector<double> re(q.size()), im(q.size());
  cplx ik(1.0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const cplx v = q[k] * ik;
    re[k] = v.real();
    im[k] = v.imag();
    ik *= cplx(0.0, 1.0);
  }
  return {RealPolynomial(std::move(re)), RealPolynomial(std::move(im))};
}

RealDivision divide(const RealPolynomial& a, const RealPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  if (a.degree() < b.degree()) return {RealPolynomial{}, a};
  std::vector<double> r = a.coeffs();
  const int db = b.degree();
  const double lead = b.leading();
  std::vector<double> quot(a.degree() - db + 1, 0.0);
  for (int k = a.degree() - db; k >= 0; --k) {
    const double f = r[k + db] / lead;
    quot[k] = f;
    for (int j = 0; j <= db; ++j) r[k + j] -= f * b.coeffs()[j];
    r[k + db] = 0.0;
  }
  r.resize(db);
  return {RealPolynomial(std::move(quot)), RealPolynomial(std::move(r))};
}

double default_root_tol(const ComplexPolynomial& p) { return 1e-6 * (1.0 + p.scale()); }

namespace {

constexpr double kMultipleRootRel = 1e-10;

bool passes_multiplicity_test(const ComplexPolynomial& p, cplx c, int m) {
  ComplexPolynomial d = p;
  for (int j = 0; j < m; ++j) {
    if (std::abs(d(c)) > kMultipleRootRel * d.magnitude(c)) return false;
    d = d.derivative();
  }
  return true;
}

cplx newton(const ComplexPolynomial& f, cplx z, double guard) {
  const ComplexPolynomial df = f.derivative();
  double fz = std::abs(f(z));
  for (int it = 0; it < 12 && fz > 0.0; ++it) {
    const cplx d = df(z);
    if (d == cplx(0.0)) break;
    const cplx step = f(z) / d;
    if (std::abs(step) > guard) break;
    const cplx zn = z - step;
    const double fn = std::abs(f(zn));
    if (!(fn < fz)) break;
    z = zn;
    fz = fn;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

std::vector<cplx> companion_eigenvalues(const ComplexPolynomial& q) {
  const int n = q.degree();
  if (n == 1) return {-q.coeff(0) / q.coeff(1)};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -q.coeff(i) / q.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

std::vector<std::vector<int>> single_linkage(const std::vector<cplx>& pts, const std::vector<int>& idx,
                                             double radius) {
  std::vector<int> parent(idx.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const cplx a = pts[idx[i]], b = pts[idx[j]];
      if (std::abs(a - b) <= radius * (1.0 + std::max(std::abs(a), std::abs(b))))
        parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(idx.size(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(idx[i]);
  }
  return groups;
}

void cluster(const ComplexPolynomial& p, const std::vector<cplx>& pts, const std::vector<int>& idx,
             double radius, double base_tol, std::vector<RootWithMultiplicity>& out) {
  for (const auto& g : single_linkage(pts, idx, radius)) {
    const int m = static_cast<int>(g.size());
    cplx c(0.0);
    for (int i : g) c += pts[i];
    c /= static_cast<double>(m);
    if (m > 1 && !passes_multiplicity_test(p, c, m)) {
      if (radius > base_tol) {
        cluster(p, pts, g, std::max(radius / 10.0, base_tol), base_tol, out);
      } else {
        // a failed test at the smallest radius means distinct roots, however close
        for (int i : g) cluster(p, pts, {i}, radius, base_tol, out);
      }
      continue;
    }
    double spread = 0.0;
    for (int i : g) spread = std::max(spread, std::abs(pts[i] - c));
    // polish on p^(m-1), where the cluster is a simple root
    ComplexPolynomial d = p;
    for (int j = 1; j < m; ++j) d = d.derivative();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (std::find(g.begin(), g.end(), static_cast<int>(j)) == g.end()) gap = std::min(gap, std::abs(pts[j] - c));
    const double guard = std::isfinite(gap) ? 0.25 * gap : 1.0 + std::abs(c);
    c = newton(d, c, m > 1 ? std::min(guard, std::max(spread, 1e-12 * (1.0 + std::abs(c)))) : guard);
    out.push_back({c, m, spread, std::abs(p(c))});
  }
}

}  // namespace

std::vector<RootWithMultiplicity> roots(const ComplexPolynomial& p, double tol) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  if (tol <= 0.0) tol = default_root_tol(p);
  std::vector<RootWithMultiplicity> out;
  int zeros = 0;
  while (p.coeff(zeros) == cplx(0.0)) ++zeros;
  if (zeros > 0) out.push_back({cplx(0.0), zeros, 0.0, 0.0});
  std::vector<cplx> rest(p.coeffs().begin() + zeros, p.coeffs().end());
  const ComplexPolynomial q(std::move(rest));
  if (q.degree() < 1) return out;

  const std::vector<cplx> eig = companion_eigenvalues(q);
  std::vector<int> idx(eig.size());
  std::iota(idx.begin(), idx.end(), 0);
  // radii are relative to |root|; a coefficient-scaled tol would merge everything on large inputs
  std::vector<RootWithMultiplicity> found;
  cluster(q, eig, idx, 0.25, std::min(tol, 1e-6), found);
  for (auto& r : found) r.residual = std::abs(p(r.location));
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

std::vector<RootWithMultiplicity> real_roots(const RealPolynomial& p, double tol) {
  std::vector<RootWithMultiplicity> out;
  for (auto r : roots(to_complex(p), tol)) {
    if (std::abs(r.location.imag()) <= 1e-9 * (1.0 + std::abs(r.location.real()))) {
      r.location = cplx(r.location.real(), 0.0);
      r.residual = std::abs(p(r.location.real()));
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.location.real() < b.location.real(); });
  return out;
}

}  // namespace lg
