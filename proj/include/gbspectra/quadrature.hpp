#pragma once

#include <Eigen/Core>

namespace gbspectra {

/// Gauss-Legendre rule on [-1,1]. Rules are computed once per order and
/// cached; orders up to 64 are supported.
struct GaussRule {
  Eigen::VectorXd nodes;    ///< ascending
  Eigen::VectorXd weights;  ///< positive, sum to 2
};

const GaussRule& gauss_legendre(int q);

/// Nodes/weights of the q-point Gauss rule mapped to [a,b].
void gauss_on(double a, double b, int q, Eigen::VectorXd& x, Eigen::VectorXd& w);

namespace cheb {

/// Number of Chebyshev-Lobatto cache nodes per element. 16 nodes resolve the
/// polynomial/trigonometric/hyperbolic sections used here to ~1e-15.
inline constexpr int kNodes = 16;

/// Chebyshev-Lobatto nodes on [0,1], ascending (includes both endpoints).
const Eigen::VectorXd& reference_nodes();

/// Barycentric weights matching reference_nodes().
const Eigen::VectorXd& barycentric_weights();

/// Evaluate the interpolant of (reference_nodes -> values) at t in [0,1].
double interpolate(const Eigen::VectorXd& values, double t);

}  // namespace cheb

}  // namespace gbspectra
