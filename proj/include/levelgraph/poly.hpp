#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

namespace lg {

using cplx = std::complex<double>;

// Dense univariate polynomial, coefficients in ascending degree.
// Trailing exact zeros are trimmed, so the zero polynomial has no coefficients.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }

  const std::vector<T>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  T coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T{}; }
  T leading() const { return c_.empty() ? T{} : c_.back(); }

  T operator()(const T& x) const {
    T acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // sum |c_k| |x|^k, the natural roundoff scale of an evaluation at x
  double magnitude(const T& x) const {
    double ax = std::abs(x), acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
    return acc;
  }

  double scale() const {
    double s = 0.0;
    for (const auto& v : c_) s = std::max(s, static_cast<double>(std::abs(v)));
    return s;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
  }

  Polynomial antiderivative() const {
    if (c_.empty()) return {};
    std::vector<T> a(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
  }

  // q with q(t) = p(x + t); q's coefficients are the Taylor coefficients p^(j)(x)/j!
  Polynomial taylor_shift(const T& x) const {
    std::vector<T> a = c_;
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
      for (int j = n - 2; j >= i; --j) a[j] += x * a[j + 1];
    return Polynomial(std::move(a));
  }

  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }
  friend Polynomial operator*(const T& s, Polynomial p) { return p *= s; }
  friend Polynomial operator-(Polynomial p) {
    for (auto& v : p.c_) v = -v;
    return p;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }
  std::vector<T> c_;
};

using RealPolynomial = Polynomial<double>;
using ComplexPolynomial = Polynomial<cplx>;

inline cplx evaluate(const ComplexPolynomial& p, cplx z) { return p(z); }
inline ComplexPolynomial antiderivative(const ComplexPolynomial& p) { return p.antiderivative(); }

ComplexPolynomial to_complex(const RealPolynomial& p);
ComplexPolynomial pow(const ComplexPolynomial& p, int e);
// prod (z - r_k)
ComplexPolynomial from_roots(const std::vector<cplx>& roots, cplx leading = 1.0);

struct LineRestriction {
  RealPolynomial re;
  RealPolynomial im;
};

// re(y) + i im(y) = p(x0 + i y)
LineRestriction restrict_to_vertical_line(const ComplexPolynomial& p, double x0);

struct RealDivision {
  RealPolynomial quotient;
  RealPolynomial remainder;
};
RealDivision divide(const RealPolynomial& a, const RealPolynomial& b);

struct RootWithMultiplicity {
  cplx location;
  int multiplicity = 1;
  double cluster_radius = 0.0;
  double residual = 0.0;  // |p(location)|
};

// tol used when the caller passes tol <= 0: 1e-6 (1 + max|coeff|)
double default_root_tol(const ComplexPolynomial& p);

// Companion-matrix eigenvalues, Newton polish, then multiplicity clustering.
// Candidate clusters (radius relative to |root|, from 0.25 down) are accepted when
// the centroid passes a derivative test; otherwise they are split, at most down to
// min(tol, 1e-6), below which the members count as distinct roots.
std::vector<RootWithMultiplicity> roots(const ComplexPolynomial& p, double tol = -1.0);

// Real roots (|Im| snapped to zero) sorted ascending.
std::vector<RootWithMultiplicity> real_roots(const RealPolynomial& p, double tol = -1.0);

}  // namespace lg
