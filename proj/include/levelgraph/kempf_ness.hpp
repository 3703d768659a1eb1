#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "levelgraph/exec.hpp"
#include "levelgraph/poly.hpp"
#include "levelgraph/quadrature.hpp"
#include "levelgraph/tracer.hpp"

namespace lg {

// Gauss-Legendre interior nodes of (a, b) with quadrature weights and a
// differentiation operator that sees the boundary values.
struct Grid {
  double a = 0.0, b = 1.0;
  std::vector<double> x;
  std::vector<double> weight;
  BoundaryDiff diff;
};

std::shared_ptr<const Grid> make_grid(double a, double b, int n = 257);

struct GridFunction {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  double p = 0.0;  // value at a
  double q = 0.0;  // value at b

  std::vector<double> derivative() const;
  double integrate(const std::vector<double>& integrand) const;
};

GridFunction sample_function(std::shared_ptr<const Grid> grid, double p, double q,
                             const std::function<double(double)>& f);
// straight line from (a, p) to (b, q)
GridFunction straight_line(std::shared_ptr<const Grid> grid, double p, double q);

struct BackgroundSigma {
  std::vector<double> values;
  double rate_a = 1.0;  // sigma'(a+)
  double rate_b = 1.0;  // -sigma'(b-)
};

// (x - a)(b - x)/(b - a)
BackgroundSigma default_sigma(const Grid& g);
double default_sigma_at(double a, double b, double x);

struct Membership {
  bool in_M = false;
  double min_value = 0.0;  // min over nodes of d/dx Re w(x + i f)
};

Membership membership(const GridFunction& f, const ComplexPolynomial& w);

struct FlowOptions {
  double stop_tol = 1e-10;    // on sup |Im w(z_f)|
  double t_max = 1e5;
  double step_tol = 1e-12;    // per-step local error, relative to 1 + |f|
  double diverge_at = 1e6;
  double endpoint_ratio_cap = 1e8;
  int max_steps = 2000000;
  int record_every = 1;
  Exec exec = Exec::parallel;
};

struct FlowTrace {
  std::vector<double> times;
  std::vector<double> J_values;        // relative to the start
  std::vector<double> residual_sup;
  std::vector<double> membership_min;
  GridFunction final_f;
  bool converged = false;
  int steps = 0;
};

// f' = -Im w(x + i f) nodewise, with J' = -int Im(w)^2 / sigma carried as one more RK component.
FlowTrace run_flow(const GridFunction& f0, const ComplexPolynomial& w, const BackgroundSigma& sigma,
                   const FlowOptions& opt = {});

// d/dt J along a path f(t): int (f_dot / sigma) Im w(z_f).
double dJ_dt(const GridFunction& f, const std::vector<double>& f_dot, const ComplexPolynomial& w,
             const BackgroundSigma& sigma);

// Potentials phi (zero at both ends) over a base f0: f_phi = f0 + phi' sigma.
GridFunction f_of_phi(const GridFunction& f0, const GridFunction& phi, const BackgroundSigma& sigma);

// sup over interior time slices and nodes of
//   phi_tt d/dx Re w(z_phi) + (d phi_t / dx)^2 sigma Im w'(z_phi)
// with central differences in t (uniform step dt).
double geodesic_residual(const std::vector<GridFunction>& phi_path, double dt, const GridFunction& f0,
                         const ComplexPolynomial& w, const BackgroundSigma& sigma);

struct GeodesicSolve {
  std::vector<GridFunction> path;
  double dt = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Boundary-value problem in t on [0, 1] between two potentials, by damped Jacobi sweeps.
GeodesicSolve relax_geodesic(const GridFunction& f0, const GridFunction& phi0, const GridFunction& phi1,
                             int slices, const ComplexPolynomial& w, const BackgroundSigma& sigma,
                             double tol = 1e-4, int max_iter = 200000);

// dJ/dt at every slice of a potential path (central differences inside, one-sided at the ends).
std::vector<double> dJ_along(const std::vector<GridFunction>& phi_path, double dt, const GridFunction& f0,
                             const ComplexPolynomial& w, const BackgroundSigma& sigma);

// int (psi')^2 sigma Re w'(z_f)
double second_variation_at(const GridFunction& f, const GridFunction& psi, const ComplexPolynomial& w,
                           const BackgroundSigma& sigma);

// Lines L_t(x) = t (x - a) + p, continued by f0 once they meet it (f0(a) > p).
// Returns dJ/dt of that family at parameter t; sigma(x) = (x - a)(b - x)/(b - a).
double steepening_dJ_dt(const ComplexPolynomial& w, double a, double b, double p,
                        const std::function<double(double)>& f0, double t, int nodes = 64);

// The C0 arc of a GraphCheck, resampled at the grid nodes (Newton on each vertical line).
GridFunction traced_graph(std::shared_ptr<const Grid> grid, const ComplexPolynomial& w, const GraphCheck& g,
                          double p, double q);

}  // namespace lg
