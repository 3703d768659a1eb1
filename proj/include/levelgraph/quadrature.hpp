#pragma once

#include <Eigen/Dense>
#include <vector>

namespace lg {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

// Differentiation on the interior nodes x of (a, b) using the polynomial through
// (a, x_1, ..., x_n, b): f'(x_i) = (D f)_i + ca_i f(a) + cb_i f(b).
struct BoundaryDiff {
  Eigen::MatrixXd D;
  Eigen::VectorXd ca;
  Eigen::VectorXd cb;
};

BoundaryDiff boundary_diff(double a, double b, const std::vector<double>& x);

// Barycentric differentiation matrix on arbitrary distinct nodes.
Eigen::MatrixXd diff_matrix(const std::vector<double>& x);

}  // namespace lg
