#pragma once

#include <Eigen/Core>

#include <vector>

#include "gbspectra/knots.hpp"
#include "gbspectra/section_space.hpp"

namespace gbspectra {

/// Generalized B-spline basis of degree p on an open uniform knot vector,
/// with polynomial, hyperbolic or trigonometric sections.
///
/// Construction follows the integral recurrence: degree-1 generalized hats
/// are closed forms per element; each higher degree is the difference of the
/// normalized cumulative integrals of two consecutive lower-degree functions.
/// Values are cached on a fixed per-element Chebyshev-Lobatto grid at build
/// time; arbitrary-x evaluation goes through barycentric interpolation.
/// First derivatives use the recurrence derivative identity (exact in the
/// cached representation); second derivatives apply the identity twice,
/// bottoming out in the closed-form degree-1 pieces.
class GBSplineBasis {
 public:
  GBSplineBasis(KnotVector kv, SectionSpace space);

  [[nodiscard]] int degree() const { return kv_.p; }
  [[nodiscard]] int elements() const { return kv_.n; }
  [[nodiscard]] int dim() const { return kv_.n + kv_.p; }
  [[nodiscard]] const KnotVector& knots() const { return kv_; }
  [[nodiscard]] const SectionSpace& space() const { return space_; }

  /// All basis values (or d-th derivatives, d <= 2) at x in [0,1]. At most
  /// p+1 consecutive entries are nonzero; entries outside the support window
  /// are exact zeros. Throws std::domain_error for x outside [0,1] and
  /// std::invalid_argument for d > 2.
  [[nodiscard]] Eigen::VectorXd eval_all(double x, int d = 0) const;

  /// The p+1 basis functions active on the element containing x.
  /// `first` is the 0-based index of the first active function.
  struct Window {
    int first = 0;
    Eigen::VectorXd values;
  };
  [[nodiscard]] Window eval_window(double x, int d = 0) const;

  /// Same as eval_window but with the element pinned explicitly; use with
  /// x at a knot to take one-sided limits from either neighbouring element.
  [[nodiscard]] Window eval_on_element(int elem, double x, int d = 0) const;

  /// Integral of basis function i (0-based) over its support.
  [[nodiscard]] double integral(int i) const;

  /// 0-based element index containing x (right-open elements; x=1 maps to
  /// the last element).
  [[nodiscard]] int element_of(double x) const;

 private:
  struct LevelFun {
    bool degenerate = false;
    bool collapse_at_one = false;  // degenerate support point (0 vs 1)
    int first_elem = 0;
    Eigen::MatrixXd values;       // (#support elements) x cheb::kNodes
    Eigen::VectorXd elem_integral;
    Eigen::VectorXd elem_prefix;  // cumulative integral before each element
    Eigen::MatrixXd node_prefix;  // within-element prefix integral at nodes
    double mu = 0.0;
    [[nodiscard]] int last_elem() const {
      return first_elem + static_cast<int>(values.rows()) - 1;
    }
  };

  // Closed-form degree-1 pieces (rising on [a,b] from 0 to 1, or falling).
  double piece_value(bool rising, double a, double b, double x, int d) const;

  double cumulative(const LevelFun& f, int elem, int node) const;  // V at a cache node
  double value_at(int level, int i, int elem, double x) const;     // barycentric
  double derivative_at(int level, int i, int elem, double x, int order) const;

  void build_level_one();
  void build_level(int k);
  void finish_level_integrals(int k);

  KnotVector kv_;
  SectionSpace space_;
  double freq_ = 0.0;  // per-element frequency (0 for polynomial)
  std::vector<std::vector<LevelFun>> levels_;  // levels_[k-1] = degree-k functions
  // analytic info for degree-1 functions: -1 when the piece is absent
  struct Degree1Piece {
    int rise_elem = -1, fall_elem = -1;
    double rise_a = 0, rise_b = 0, fall_a = 0, fall_b = 0;
  };
  std::vector<Degree1Piece> degree1_;
};

/// Convenience free functions mirroring the library surface.
GBSplineBasis build_basis(const KnotVector& kv, const SectionSpace& space);
inline Eigen::VectorXd eval_basis(const GBSplineBasis& b, double x, int d = 0) {
  return b.eval_all(x, d);
}

/// Pointwise bounds of N^Q_i / N^poly_i over interior basis functions
/// (i = 2..n+p-1, 1-based) sampled on a fixed per-element interior grid.
/// Sample points within 1e-6 of a knot or where the polynomial value is
/// below 1e-14 are skipped; throws std::runtime_error if nothing remains.
struct RatioBounds {
  double low = 0.0;
  double high = 0.0;
};
RatioBounds ratio_bounds(int p, const SectionSpace& space, int n, int grid_size = 16);

}  // namespace gbspectra
