#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is written from the classical definitions, on purpose
// without reusing library internals.

#include <Eigen/Core>

#include <cmath>
#include <random>

#include "gbspectra/knots.hpp"

namespace oracles {

/// Classical Cox-de Boor evaluation of all n+p polynomial B-splines at x.
/// Zero-degree functions are right-open indicators except on the last
/// nonempty span, which is closed so that x = 1 is covered.
inline Eigen::VectorXd bspline_eval_all(const gbspectra::KnotVector& kv, double x) {
  const int p = kv.p;
  const int num = kv.num_basis();
  const int num_knots = kv.num_knots();

  // locate the last nonempty span for the closed-right rule
  int last_span = -1;
  for (int i = 0; i + 1 < num_knots; ++i)
    if (kv.knots[static_cast<std::size_t>(i)] <
        kv.knots[static_cast<std::size_t>(i) + 1])
      last_span = i;

  Eigen::VectorXd N = Eigen::VectorXd::Zero(num + p);
  for (int i = 0; i + 1 < num_knots; ++i) {
    const double lo = kv.knots[static_cast<std::size_t>(i)];
    const double hi = kv.knots[static_cast<std::size_t>(i) + 1];
    const bool inside = (x >= lo && x < hi) || (i == last_span && x >= lo && x <= hi);
    if (i < N.size() && inside && lo < hi) N(i) = 1.0;
  }

  for (int k = 1; k <= p; ++k) {
    for (int i = 0; i + k + 1 < num_knots && i < N.size(); ++i) {
      const double t_i = kv.knots[static_cast<std::size_t>(i)];
      const double t_ik = kv.knots[static_cast<std::size_t>(i + k)];
      const double t_i1 = kv.knots[static_cast<std::size_t>(i) + 1];
      const double t_ik1 = kv.knots[static_cast<std::size_t>(i + k) + 1];
      double left = 0.0, right = 0.0;
      if (t_ik > t_i) left = (x - t_i) / (t_ik - t_i) * N(i);
      if (i + 1 < N.size() && t_ik1 > t_i1) right = (t_ik1 - x) / (t_ik1 - t_i1) * N(i + 1);
      N(i) = left + right;
    }
  }
  return N.head(num);
}

/// Eigenvalues of the m x m tridiagonal Toeplitz [-1, 2, -1], ascending:
/// 2 - 2 cos(j pi / (m+1)).
inline Eigen::VectorXd tridiag_spectrum(int m) {
  const double pi = std::acos(-1.0);
  Eigen::VectorXd out(m);
  for (int j = 1; j <= m; ++j)
    out(j - 1) = 2.0 - 2.0 * std::cos(j * pi / (m + 1));
  return out;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd X(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = dist(rng);
  return X;
}

}  // namespace oracles
