#pragma once

#include <vector>

namespace gbspectra {

/// Open uniform knot vector on [0,1]: interior knots i/n, boundary knots with
/// multiplicity p+1. Holds n+2p+1 knots for n elements and degree p; the
/// associated spline space has dimension n+p and smoothness C^{p-1} at the
/// interior knots.
struct KnotVector {
  int n = 0;  ///< number of elements
  int p = 0;  ///< degree
  std::vector<double> knots;  ///< size n+2p+1, non-decreasing

  /// 1-based knot access t_i, i in [1, n+2p+1].
  [[nodiscard]] double t(int i) const { return knots[static_cast<std::size_t>(i - 1)]; }

  [[nodiscard]] int num_knots() const { return static_cast<int>(knots.size()); }
  [[nodiscard]] int num_basis() const { return n + p; }
};

/// Build the open uniform knot vector for n elements and degree p.
/// Throws std::invalid_argument unless n >= 2 and p >= 1.
KnotVector make_knots(int n, int p);

}  // namespace gbspectra
