#include "levelgraph/kempf_ness.hpp"

#include <algorithm>
#include <cmath>

#include "levelgraph/errors.hpp"

namespace lg {

std::shared_ptr<const Grid> make_grid(double a, double b, int n) {
  if (!(a < b)) throw Error(ErrorKind::InvalidInput, "need a < b");
  const GaussLegendre gl = gauss_legendre(n);
  auto g = std::make_shared<Grid>();
  g->a = a;
  g->b = b;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    g->x.push_back(mid + half * gl.nodes[i]);
    g->weight.push_back(half * gl.weights[i]);
  }
  g->diff = boundary_diff(a, b, g->x);
  return g;
}

std::vector<double> GridFunction::derivative() const {
  const auto& d = grid->diff;
  const Eigen::Map<const Eigen::VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
  const Eigen::VectorXd r = d.D * v + d.ca * p + d.cb * q;
  return {r.data(), r.data() + r.size()};
}

double GridFunction::integrate(const std::vector<double>& integrand) const {
  double s = 0.0;
  for (std::size_t i = 0; i < integrand.size(); ++i) s += grid->weight[i] * integrand[i];
  return s;
}

GridFunction sample_function(std::shared_ptr<const Grid> grid, double p, double q,
                             const std::function<double(double)>& f) {
  GridFunction g{std::move(grid), {}, p, q};
  for (double x : g.grid->x) g.values.push_back(f(x));
  return g;
}

GridFunction straight_line(std::shared_ptr<const Grid> grid, double p, double q) {
  const double a = grid->a, b = grid->b;
  return sample_function(std::move(grid), p, q, [=](double x) { return p + (q - p) * (x - a) / (b - a); });
}

double default_sigma_at(double a, double b, double x) { return (x - a) * (b - x) / (b - a); }

BackgroundSigma default_sigma(const Grid& g) {
  BackgroundSigma s;
  for (double x : g.x) s.values.push_back(default_sigma_at(g.a, g.b, x));
  s.rate_a = s.rate_b = 1.0;
  return s;
}

Membership membership(const GridFunction& f, const ComplexPolynomial& w) {
  const ComplexPolynomial dw = w.derivative();
  const auto fp = f.derivative();
  Membership m;
  m.min_value = kInf;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    const cplx d = dw(cplx(f.grid->x[i], f.values[i]));
    m.min_value = std::min(m.min_value, d.real() - fp[i] * d.imag());
  }
  m.in_M = m.min_value > 0.0;
  return m;
}

namespace {

struct FlowRhs {
  const Grid& g;
  const ComplexPolynomial& w;
  const BackgroundSigma& sigma;
  bool parallel;
  mutable std::vector<double> jterm;

  // k = -Im w(x + i y); returns dJ/dt
  double operator()(const std::vector<double>& y, std::vector<double>& k) const {
    const long n = static_cast<long>(y.size());
    jterm.resize(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n; ++i) {
      const double v = w(cplx(g.x[i], y[i])).imag();
      k[i] = -v;
      jterm[i] = g.weight[i] * v * v / sigma.values[i];
    }
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += jterm[i];
    return -s;
  }
};

struct Rk4 {
  const FlowRhs& rhs;
  std::vector<double> k1, k2, k3, k4, tmp;

  explicit Rk4(const FlowRhs& r, std::size_t n) : rhs(r), k1(n), k2(n), k3(n), k4(n), tmp(n) {}

  void step(std::vector<double>& y, double& J, double h) {
    const std::size_t n = y.size();
    const double j1 = rhs(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const double j2 = rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const double j3 = rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    const double j4 = rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    J += h / 6.0 * (j1 + 2.0 * j2 + 2.0 * j3 + j4);
  }
};

}  // namespace

FlowTrace run_flow(const GridFunction& f0, const ComplexPolynomial& w, const BackgroundSigma& sigma,
                   const FlowOptions& opt) {
  const Grid& g = *f0.grid;
  const ComplexPolynomial dw = w.derivative();
  const bool par = opt.exec == Exec::parallel;
  const FlowRhs rhs{g, w, sigma, par, {}};
  const std::size_t n = g.x.size();
  Rk4 rk(rhs, n);

  FlowTrace tr;
  tr.final_f = f0;
  std::vector<double> y = f0.values, big(n), half(n);
  double J = 0.0, t = 0.0, h = 0.0;

  for (int step = 0;; ++step) {
    double res = 0.0, ratio = 0.0, lam = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx z(g.x[i], y[i]);
      const double v = std::abs(w(z).imag());
      if (!std::isfinite(v)) throw Error(ErrorKind::Diverged, "non-finite flow state");
      res = std::max(res, v);
      ratio = std::max(ratio, v / sigma.values[i]);
      lam = std::max(lam, std::abs(dw(z)));
    }
    if (res > opt.diverge_at) throw Error(ErrorKind::Diverged, "sup |Im w| = " + std::to_string(res));
    if (ratio > opt.endpoint_ratio_cap)
      throw Error(ErrorKind::NonIntegrableEndpoint, "|Im w| / sigma = " + std::to_string(ratio));
    const bool done = res < opt.stop_tol || t >= opt.t_max || step >= opt.max_steps;
    if (step % opt.record_every == 0 || done) {
      tr.final_f.values = y;
      tr.times.push_back(t);
      tr.J_values.push_back(J);
      tr.residual_sup.push_back(res);
      tr.membership_min.push_back(membership(tr.final_f, w).min_value);
    }
    if (done) {
      tr.converged = res < opt.stop_tol;
      tr.steps = step;
      break;
    }

    const double hcap = lam > 0.0 ? 2.5 / lam : opt.t_max;
    if (h == 0.0) h = hcap;
    h = std::min({h, hcap, opt.t_max - t + 1e-300});
    for (;;) {
      double Jb = J, Jh = J;
      big = y;
      rk.step(big, Jb, h);
      half = y;
      rk.step(half, Jh, 0.5 * h);
      rk.step(half, Jh, 0.5 * h);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, std::abs(big[i] - half[i]) / 15.0 / (1.0 + std::abs(half[i])));
      const double grow = err > 0.0 ? 0.9 * std::pow(opt.step_tol / err, 0.2) : 2.0;
      if (err <= opt.step_tol) {
        y.swap(half);
        J = Jh;
        t += h;
        h *= std::clamp(grow, 1.0, 2.0);
        break;
      }
      h *= std::max(0.2, std::min(grow, 0.9));
      if (h < 1e-14 * (1.0 + t)) throw Error(ErrorKind::Diverged, "flow step size underflow");
    }
  }
  return tr;
}

double dJ_dt(const GridFunction& f, const std::vector<double>& f_dot, const ComplexPolynomial& w,
             const BackgroundSigma& sigma) {
  std::vector<double> integrand(f_dot.size());
  for (std::size_t i = 0; i < f_dot.size(); ++i)
    integrand[i] = f_dot[i] / sigma.values[i] * w(cplx(f.grid->x[i], f.values[i])).imag();
  return f.integrate(integrand);
}

GridFunction f_of_phi(const GridFunction& f0, const GridFunction& phi, const BackgroundSigma& sigma) {
  GridFunction f = f0;
  const auto d = phi.derivative();
  for (std::size_t i = 0; i < d.size(); ++i) f.values[i] += d[i] * sigma.values[i];
  return f;
}

namespace {

GridFunction zero_ended(const GridFunction& like, std::vector<double> v) {
  return GridFunction{like.grid, std::move(v), 0.0, 0.0};
}

// M = d/dx Re w(z_f) and Im w'(z_f) at the nodes of f
void geodesic_coefficients(const GridFunction& f, const ComplexPolynomial& dw, std::vector<double>& M,
                           std::vector<double>& imd) {
  const auto fp = f.derivative();
  M.resize(fp.size());
  imd.resize(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    const cplx d = dw(cplx(f.grid->x[i], f.values[i]));
    M[i] = d.real() - fp[i] * d.imag();
    imd[i] = d.imag();
  }
}

}  // namespace

double geodesic_residual(const std::vector<GridFunction>& path, double dt, const GridFunction& f0,
                         const ComplexPolynomial& w, const BackgroundSigma& sigma) {
  if (path.size() < 3) throw Error(ErrorKind::InvalidInput, "geodesic residual needs at least three slices");
  const ComplexPolynomial dw = w.derivative();
  const std::size_t n = f0.values.size();
  double sup = 0.0;
  std::vector<double> M, imd, vel(n);
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) vel[i] = (path[k + 1].values[i] - path[k - 1].values[i]) / (2.0 * dt);
    const auto dvel = zero_ended(f0, vel).derivative();
    geodesic_coefficients(f_of_phi(f0, path[k], sigma), dw, M, imd);
    for (std::size_t i = 0; i < n; ++i) {
      const double acc = (path[k + 1].values[i] - 2.0 * path[k].values[i] + path[k - 1].values[i]) / (dt * dt);
      sup = std::max(sup, std::abs(acc * M[i] + dvel[i] * dvel[i] * sigma.values[i] * imd[i]));
    }
  }
  return sup;
}

GeodesicSolve relax_geodesic(const GridFunction& f0, const GridFunction& phi0, const GridFunction& phi1, int slices,
                             const ComplexPolynomial& w, const BackgroundSigma& sigma, double tol, int max_iter) {
  if (slices < 2) throw Error(ErrorKind::InvalidInput, "need at least two time slices");
  const ComplexPolynomial dw = w.derivative();
  const std::size_t n = f0.values.size();
  GeodesicSolve out;
  out.dt = 1.0 / slices;
  const double dt = out.dt;
  for (int k = 0; k <= slices; ++k) {
    const double s = static_cast<double>(k) / slices;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (1.0 - s) * phi0.values[i] + s * phi1.values[i];
    out.path.push_back(zero_ended(f0, std::move(v)));
  }
  constexpr double damping = 0.8;
  std::vector<double> M, imd, vel(n);
  auto next = out.path;
  for (int it = 0; it < max_iter; ++it) {
    if (it % 10 == 0) {
      out.residual = geodesic_residual(out.path, dt, f0, w, sigma);
      out.iterations = it;
      if (out.residual < tol) return out;
    }
    for (int k = 1; k < slices; ++k) {
      for (std::size_t i = 0; i < n; ++i)
        vel[i] = (out.path[k + 1].values[i] - out.path[k - 1].values[i]) / (2.0 * dt);
      const auto dvel = zero_ended(f0, vel).derivative();
      geodesic_coefficients(f_of_phi(f0, out.path[k], sigma), dw, M, imd);
      for (std::size_t i = 0; i < n; ++i) {
        const double target = 0.5 * (out.path[k + 1].values[i] + out.path[k - 1].values[i]) +
                              0.5 * dt * dt * dvel[i] * dvel[i] * sigma.values[i] * imd[i] / M[i];
        next[k].values[i] = (1.0 - damping) * out.path[k].values[i] + damping * target;
      }
    }
    for (int k = 1; k < slices; ++k) out.path[k].values.swap(next[k].values);
  }
  out.residual = geodesic_residual(out.path, dt, f0, w, sigma);
  out.iterations = max_iter;
  return out;
}

std::vector<double> dJ_along(const std::vector<GridFunction>& path, double dt, const GridFunction& f0,
                             const ComplexPolynomial& w, const BackgroundSigma& sigma) {
  const std::size_t K = path.size(), n = f0.values.size();
  if (K < 3) throw Error(ErrorKind::InvalidInput, "need at least three slices");
  std::vector<double> out(K), vel(n);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (k == 0)
        vel[i] = (-3.0 * path[0].values[i] + 4.0 * path[1].values[i] - path[2].values[i]) / (2.0 * dt);
      else if (k + 1 == K)
        vel[i] = (3.0 * path[k].values[i] - 4.0 * path[k - 1].values[i] + path[k - 2].values[i]) / (2.0 * dt);
      else
        vel[i] = (path[k + 1].values[i] - path[k - 1].values[i]) / (2.0 * dt);
    }
    auto fdot = zero_ended(f0, vel).derivative();
    for (std::size_t i = 0; i < n; ++i) fdot[i] *= sigma.values[i];
    out[k] = dJ_dt(f_of_phi(f0, path[k], sigma), fdot, w, sigma);
  }
  return out;
}

double second_variation_at(const GridFunction& f, const GridFunction& psi, const ComplexPolynomial& w,
                           const BackgroundSigma& sigma) {
  const ComplexPolynomial dw = w.derivative();
  const auto d = psi.derivative();
  std::vector<double> integrand(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    integrand[i] = d[i] * d[i] * sigma.values[i] * dw(cplx(f.grid->x[i], f.values[i])).real();
  return f.integrate(integrand);
}

double steepening_dJ_dt(const ComplexPolynomial& w, double a, double b, double p,
                        const std::function<double(double)>& f0, double t, int nodes) {
  auto gap = [&](double x) { return t * (x - a) + p - f0(x); };
  if (!(gap(a) < 0.0)) throw Error(ErrorKind::InvalidInput, "f0 must start above p");
  // first crossing of L_t with f0
  double lo = a, hi = b;
  const int scan = 4096;
  for (int j = 1; j <= scan; ++j) {
    const double x = a + (b - a) * j / scan;
    if (gap(x) >= 0.0) {
      hi = x;
      break;
    }
    lo = x;
  }
  if (gap(hi) >= 0.0)
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (gap(mid) < 0.0 ? lo : hi) = mid;
    }
  const double xt = hi;
  const GaussLegendre gl = gauss_legendre(nodes);
  double s = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double x = a + 0.5 * (xt - a) * (gl.nodes[i] + 1.0);
    const double ftdot = x - a;
    s += 0.5 * (xt - a) * gl.weights[i] * ftdot / default_sigma_at(a, b, x) *
         w(cplx(x, t * (x - a) + p)).imag();
  }
  return s;
}

GridFunction traced_graph(std::shared_ptr<const Grid> grid, const ComplexPolynomial& w, const GraphCheck& g,
                          double p, double q) {
  GridFunction out{grid, {}, p, q};
  const auto& arc = g.arc;
  for (double x : grid->x) {
    // arc runs from z2 toward decreasing Re
    std::size_t j = 1;
    while (j < arc.size() && arc[j].real() > x) ++j;
    if (j >= arc.size()) throw Error(ErrorKind::InvalidInput, "node outside the traced arc");
    const cplx l = arc[j], r = arc[j - 1];
    const double s = (x - l.real()) / (r.real() - l.real());
    const auto y = level_point_on_line(w, x, l.imag() + s * (r.imag() - l.imag()));
    if (!y) throw Error(ErrorKind::CorrectorDiverged, "could not resample the traced arc");
    out.values.push_back(*y);
  }
  return out;
}

}  // namespace lg
