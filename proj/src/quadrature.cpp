#include "levelgraph/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "levelgraph/errors.hpp"

namespace lg {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "need at least one quadrature node");
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // refresh dp at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = g.weights[n - 1 - i] = wgt;
  }
  if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  return g;
}

Eigen::MatrixXd diff_matrix(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  // weights 1 / prod (x_j - x_k), kept as log-magnitude and sign
  std::vector<double> lw(n, 0.0), sg(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = x[j] - x[k];
      if (d == 0.0) throw Error(ErrorKind::InvalidInput, "repeated interpolation node");
      lw[j] -= std::log(std::abs(d));
      if (d < 0.0) sg[j] = -sg[j];
    }
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = sg[i] * sg[j] * std::exp(lw[j] - lw[i]) / (x[i] - x[j]);
      D(i, j) = v;
      diag -= v;
    }
    D(i, i) = diag;
  }
  return D;
}

BoundaryDiff boundary_diff(double a, double b, const std::vector<double>& x) {
  std::vector<double> ext;
  ext.reserve(x.size() + 2);
  ext.push_back(a);
  ext.insert(ext.end(), x.begin(), x.end());
  ext.push_back(b);
  const Eigen::MatrixXd full = diff_matrix(ext);
  const int n = static_cast<int>(x.size());
  return {full.block(1, 1, n, n), full.block(1, 0, n, 1), full.block(1, n + 1, n, 1)};
}

}  // namespace lg
