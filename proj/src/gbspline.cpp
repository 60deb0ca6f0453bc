#include "gbspectra/gbspline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gbspectra/quadrature.hpp"

namespace gbspectra {

GBSplineBasis::GBSplineBasis(KnotVector kv, SectionSpace space)
    : kv_(std::move(kv)), space_(space) {
  space_.validate(kv_.n);
  freq_ = space_.is_polynomial() ? 0.0 : space_.frequency(kv_.n);
  levels_.resize(static_cast<std::size_t>(kv_.p));
  build_level_one();
  finish_level_integrals(1);
  for (int k = 2; k <= kv_.p; ++k) {
    build_level(k);
    finish_level_integrals(k);
  }
}

double GBSplineBasis::piece_value(bool rising, double a, double b, double x, int d) const {
  const double h = b - a;
  const double arg = rising ? x - a : b - x;
  const double sign = rising ? 1.0 : -1.0;
  switch (space_.kind) {
    case SpaceKind::Polynomial:
      if (d == 0) return arg / h;
      if (d == 1) return sign / h;
      return 0.0;
    case SpaceKind::Trigonometric: {
      const double s = std::sin(freq_ * h);
      if (d == 0) return std::sin(freq_ * arg) / s;
      if (d == 1) return sign * freq_ * std::cos(freq_ * arg) / s;
      return -freq_ * freq_ * std::sin(freq_ * arg) / s;
    }
    case SpaceKind::Hyperbolic: {
      const double s = std::sinh(freq_ * h);
      if (d == 0) return std::sinh(freq_ * arg) / s;
      if (d == 1) return sign * freq_ * std::cosh(freq_ * arg) / s;
      return freq_ * freq_ * std::sinh(freq_ * arg) / s;
    }
  }
  return 0.0;
}

void GBSplineBasis::build_level_one() {
  const int n = kv_.n, p = kv_.p;
  const int count = n + 2 * p - 1;
  levels_[0].resize(static_cast<std::size_t>(count));
  degree1_.assign(static_cast<std::size_t>(count), Degree1Piece{});
  const Eigen::VectorXd& nodes = cheb::reference_nodes();

  for (int i = 1; i <= count; ++i) {
    LevelFun& f = levels_[0][static_cast<std::size_t>(i - 1)];
    Degree1Piece& pc = degree1_[static_cast<std::size_t>(i - 1)];
    const double t0 = kv_.t(i), t1 = kv_.t(i + 1), t2 = kv_.t(i + 2);
    if (t2 <= 0.0) {  // support collapsed onto x = 0
      f.degenerate = true;
      continue;
    }
    if (t0 >= 1.0) {  // support collapsed onto x = 1
      f.degenerate = true;
      f.collapse_at_one = true;
      continue;
    }
    const int g_lo = std::clamp(static_cast<int>(std::lround(t0 * n)), 0, n - 1);
    const int g_hi = std::clamp(static_cast<int>(std::lround(t2 * n)) - 1, 0, n - 1);
    f.first_elem = g_lo;
    f.values.setZero(g_hi - g_lo + 1, cheb::kNodes);
    if (t1 > t0) {
      pc.rise_elem = static_cast<int>(std::lround(t0 * n));
      pc.rise_a = t0;
      pc.rise_b = t1;
    }
    if (t2 > t1) {
      pc.fall_elem = static_cast<int>(std::lround(t1 * n));
      pc.fall_a = t1;
      pc.fall_b = t2;
    }
    for (int e = g_lo; e <= g_hi; ++e) {
      for (int j = 0; j < cheb::kNodes; ++j) {
        const double x = (e + nodes(j)) / n;
        double v = 0.0;
        if (e == pc.rise_elem)
          v = piece_value(true, pc.rise_a, pc.rise_b, x, 0);
        else if (e == pc.fall_elem)
          v = piece_value(false, pc.fall_a, pc.fall_b, x, 0);
        f.values(e - g_lo, j) = v;
      }
    }
  }
}

double GBSplineBasis::cumulative(const LevelFun& f, int elem, int node) const {
  if (f.degenerate) return f.collapse_at_one ? 0.0 : 1.0;
  if (elem < f.first_elem) return 0.0;
  if (elem > f.last_elem()) return 1.0;
  const int r = elem - f.first_elem;
  return (f.elem_prefix(r) + f.node_prefix(r, node)) / f.mu;
}

void GBSplineBasis::build_level(int k) {
  const int n = kv_.n, p = kv_.p;
  const int count = n + 2 * p - k;
  levels_[static_cast<std::size_t>(k - 1)].resize(static_cast<std::size_t>(count));
  const std::vector<LevelFun>& prev = levels_[static_cast<std::size_t>(k - 2)];

  for (int i = 1; i <= count; ++i) {
    LevelFun& f = levels_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)];
    const double lo = kv_.t(i), hi = kv_.t(i + k + 1);
    if (hi <= 0.0) {
      f.degenerate = true;
      continue;
    }
    if (lo >= 1.0) {
      f.degenerate = true;
      f.collapse_at_one = true;
      continue;
    }
    const int g_lo = std::clamp(static_cast<int>(std::lround(lo * n)), 0, n - 1);
    const int g_hi = std::clamp(static_cast<int>(std::lround(hi * n)) - 1, 0, n - 1);
    f.first_elem = g_lo;
    f.values.resize(g_hi - g_lo + 1, cheb::kNodes);
    const LevelFun& fa = prev[static_cast<std::size_t>(i - 1)];
    const LevelFun& fb = prev[static_cast<std::size_t>(i)];
    for (int e = g_lo; e <= g_hi; ++e)
      for (int j = 0; j < cheb::kNodes; ++j)
        f.values(e - g_lo, j) = cumulative(fa, e, j) - cumulative(fb, e, j);
  }
}

void GBSplineBasis::finish_level_integrals(int k) {
  const int n = kv_.n;
  const int q = kv_.p + 3;
  const Eigen::VectorXd& nodes = cheb::reference_nodes();
  std::vector<LevelFun>& level = levels_[static_cast<std::size_t>(k - 1)];

  Eigen::VectorXd gx, gw, row;
  for (int i = 1; i <= static_cast<int>(level.size()); ++i) {
    LevelFun& f = level[static_cast<std::size_t>(i - 1)];
    if (f.degenerate) continue;
    const int rows = static_cast<int>(f.values.rows());
    f.node_prefix.setZero(rows, cheb::kNodes);
    f.elem_integral.resize(rows);
    f.elem_prefix.resize(rows);
    for (int r = 0; r < rows; ++r) {
      const int e = f.first_elem + r;
      const double a = static_cast<double>(e) / n;
      if (k >= 2) row = f.values.row(r);
      const Degree1Piece& pc = degree1_[static_cast<std::size_t>(i - 1)];
      for (int j = 1; j < cheb::kNodes; ++j) {
        const double xj = (e + nodes(j)) / n;
        gauss_on(a, xj, q, gx, gw);
        double s = 0.0;
        for (int g = 0; g < q; ++g) {
          double v;
          if (k == 1) {
            if (e == pc.rise_elem)
              v = piece_value(true, pc.rise_a, pc.rise_b, gx(g), 0);
            else if (e == pc.fall_elem)
              v = piece_value(false, pc.fall_a, pc.fall_b, gx(g), 0);
            else
              v = 0.0;
          } else {
            v = cheb::interpolate(row, (gx(g) - a) * n);
          }
          s += gw(g) * v;
        }
        f.node_prefix(r, j) = s;
      }
      f.elem_integral(r) = f.node_prefix(r, cheb::kNodes - 1);
    }
    f.elem_prefix(0) = 0.0;
    for (int r = 1; r < rows; ++r)
      f.elem_prefix(r) = f.elem_prefix(r - 1) + f.elem_integral(r - 1);
    f.mu = f.elem_prefix(rows - 1) + f.elem_integral(rows - 1);
  }
}

double GBSplineBasis::value_at(int level, int i, int elem, double x) const {
  const std::vector<LevelFun>& funs = levels_[static_cast<std::size_t>(level - 1)];
  if (i < 1 || i > static_cast<int>(funs.size())) return 0.0;
  const LevelFun& f = funs[static_cast<std::size_t>(i - 1)];
  if (f.degenerate || elem < f.first_elem || elem > f.last_elem()) return 0.0;
  const double a = static_cast<double>(elem) / kv_.n;
  const Eigen::VectorXd row = f.values.row(elem - f.first_elem);
  return cheb::interpolate(row, (x - a) * kv_.n);
}

double GBSplineBasis::derivative_at(int level, int i, int elem, double x, int order) const {
  if (order <= 0) return value_at(level, i, elem, x);
  const std::vector<LevelFun>& funs = levels_[static_cast<std::size_t>(level - 1)];
  if (i < 1 || i > static_cast<int>(funs.size())) return 0.0;
  const LevelFun& f = funs[static_cast<std::size_t>(i - 1)];
  if (f.degenerate || elem < f.first_elem || elem > f.last_elem()) return 0.0;

  if (level == 1) {
    const Degree1Piece& pc = degree1_[static_cast<std::size_t>(i - 1)];
    if (elem == pc.rise_elem) return piece_value(true, pc.rise_a, pc.rise_b, x, order);
    if (elem == pc.fall_elem) return piece_value(false, pc.fall_a, pc.fall_b, x, order);
    return 0.0;
  }

  // d/dx N_{i,k} = N_{i,k-1}/mu_i - N_{i+1,k-1}/mu_{i+1}; degenerate terms vanish.
  const std::vector<LevelFun>& prev = levels_[static_cast<std::size_t>(level - 2)];
  auto term = [&](int j) -> double {
    if (j < 1 || j > static_cast<int>(prev.size())) return 0.0;
    const LevelFun& g = prev[static_cast<std::size_t>(j - 1)];
    if (g.degenerate) return 0.0;
    const double v = (order == 1) ? value_at(level - 1, j, elem, x)
                                  : derivative_at(level - 1, j, elem, x, order - 1);
    return v / g.mu;
  };
  return term(i) - term(i + 1);
}

int GBSplineBasis::element_of(double x) const {
  return std::clamp(static_cast<int>(x * kv_.n), 0, kv_.n - 1);
}

GBSplineBasis::Window GBSplineBasis::eval_on_element(int elem, double x, int d) const {
  if (elem < 0 || elem >= kv_.n)
    throw std::invalid_argument("eval_on_element: element index " + std::to_string(elem) +
                                " out of [0, " + std::to_string(kv_.n - 1) + "]");
  if (d < 0 || d > 2)
    throw std::invalid_argument("derivative order must be 0, 1 or 2, got " + std::to_string(d));
  Window w;
  w.first = elem;
  w.values.resize(kv_.p + 1);
  for (int r = 0; r <= kv_.p; ++r) {
    const int i = elem + 1 + r;  // 1-based index of the active function
    w.values(r) =
        (d == 0) ? value_at(kv_.p, i, elem, x) : derivative_at(kv_.p, i, elem, x, d);
  }
  return w;
}

GBSplineBasis::Window GBSplineBasis::eval_window(double x, int d) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("basis evaluation outside [0,1]: x = " + std::to_string(x));
  return eval_on_element(element_of(x), x, d);
}

Eigen::VectorXd GBSplineBasis::eval_all(double x, int d) const {
  const Window w = eval_window(x, d);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  out.segment(w.first, kv_.p + 1) = w.values;
  return out;
}

double GBSplineBasis::integral(int i) const {
  if (i < 0 || i >= dim())
    throw std::out_of_range("basis index " + std::to_string(i) + " out of [0, " +
                            std::to_string(dim() - 1) + "]");
  return levels_[static_cast<std::size_t>(kv_.p - 1)][static_cast<std::size_t>(i)].mu;
}

GBSplineBasis build_basis(const KnotVector& kv, const SectionSpace& space) {
  return GBSplineBasis(kv, space);
}

RatioBounds ratio_bounds(int p, const SectionSpace& space, int n, int grid_size) {
  const KnotVector kv = make_knots(n, p);
  const GBSplineBasis generalized(kv, space);
  const GBSplineBasis polynomial(kv, SectionSpace{});

  RatioBounds rb{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  bool any = false;
  for (int e = 0; e < n; ++e) {
    for (int s = 0; s < grid_size; ++s) {
      const double frac = (s + 0.5) / grid_size;
      if (std::min(frac, 1.0 - frac) / n < 1e-6) continue;  // too close to a knot
      const double x = (e + frac) / n;
      const auto wq = generalized.eval_window(x);
      const auto wp = polynomial.eval_window(x);
      for (int r = 0; r <= p; ++r) {
        const int i = wq.first + 1 + r;  // 1-based
        if (i < 2 || i > n + p - 1) continue;  // interior functions only
        if (std::abs(wp.values(r)) < 1e-14) continue;
        const double ratio = wq.values(r) / wp.values(r);
        rb.low = std::min(rb.low, ratio);
        rb.high = std::max(rb.high, ratio);
        any = true;
      }
    }
  }
  if (!any) throw std::runtime_error("ratio_bounds: no usable sample points survived");
  return rb;
}

}  // namespace gbspectra
