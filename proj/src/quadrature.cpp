#include "gbspectra/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbspectra {

namespace {

constexpr int kMaxOrder = 64;

/// Legendre P_q and P'_q at x via the three-term recurrence.
void legendre(int q, double x, double& P, double& dP) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= q; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  P = (q == 0) ? 1.0 : p1;
  dP = (q == 0) ? 0.0 : q * (x * p1 - p0) / (x * x - 1.0);
}

GaussRule compute_rule(int q) {
  const double pi = std::acos(-1.0);
  GaussRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    // Tricomi initial guess, then Newton on P_q.
    double x = std::cos(pi * (i + 0.75) / (q + 0.5));
    double P = 0.0, dP = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(q, x, P, dP);
      const double dx = P / dP;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(q, x, P, dP);
    rule.nodes(q - 1 - i) = x;  // initial guesses descend; store ascending
    rule.weights(q - 1 - i) = 2.0 / ((1.0 - x * x) * dP * dP);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int q) {
  if (q < 1 || q > kMaxOrder)
    throw std::invalid_argument("gauss_legendre: order must be in [1, " +
                                std::to_string(kMaxOrder) + "], got " + std::to_string(q));
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> all(kMaxOrder + 1);
    for (int k = 1; k <= kMaxOrder; ++k) all[static_cast<std::size_t>(k)] = compute_rule(k);
    return all;
  }();
  return rules[static_cast<std::size_t>(q)];
}

void gauss_on(double a, double b, int q, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  const GaussRule& rule = gauss_legendre(q);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  x = (rule.nodes.array() * half + mid).matrix();
  w = rule.weights * half;
}

namespace cheb {

const Eigen::VectorXd& reference_nodes() {
  static const Eigen::VectorXd nodes = [] {
    const double pi = std::acos(-1.0);
    Eigen::VectorXd t(kNodes);
    for (int j = 0; j < kNodes; ++j)
      t(j) = 0.5 * (1.0 - std::cos(pi * j / (kNodes - 1)));
    t(0) = 0.0;
    t(kNodes - 1) = 1.0;
    return t;
  }();
  return nodes;
}

const Eigen::VectorXd& barycentric_weights() {
  static const Eigen::VectorXd weights = [] {
    // Chebyshev-Lobatto weights: alternating signs, halved at the ends.
    // Our nodes are an affine image of the classical ones, which only
    // rescales all weights by a common factor the formula cancels.
    Eigen::VectorXd w(kNodes);
    for (int j = 0; j < kNodes; ++j) w(j) = (j % 2 == 0) ? 1.0 : -1.0;
    w(0) *= 0.5;
    w(kNodes - 1) *= 0.5;
    return w;
  }();
  return weights;
}

double interpolate(const Eigen::VectorXd& values, double t) {
  const Eigen::VectorXd& nodes = reference_nodes();
  const Eigen::VectorXd& w = barycentric_weights();
  double num = 0.0, den = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const double diff = t - nodes(j);
    if (std::abs(diff) < 1e-14) return values(j);
    const double r = w(j) / diff;
    num += r * values(j);
    den += r;
  }
  return num / den;
}

}  // namespace cheb

}  // namespace gbspectra
