#include "gbspectra/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbspectra {

namespace {
const double kPi = std::acos(-1.0);
}

double SymbolCoeffs::eval(double theta) const {
  double v = coeff(0);
  for (int k = 1; k <= p; ++k) v += 2.0 * coeff(k) * std::cos(k * theta);
  return v;
}

Eigen::MatrixXd toeplitz(int m, const SymbolCoeffs& coeffs) {
  if (m < 1) throw std::invalid_argument("toeplitz: size must be positive");
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int j_lo = std::max(0, i - coeffs.p);
    const int j_hi = std::min(m - 1, i + coeffs.p);
    for (int j = j_lo; j <= j_hi; ++j) T(i, j) = coeffs.coeff(i - j);
  }
  return T;
}

Eigen::MatrixXd TwoLevelSymbol::coeff_table() const {
  if (f1.p != h1.p || f2.p != h2.p)
    throw std::invalid_argument("two-level symbol: mismatched bandwidths per direction");
  const int L = f1.p;  // inner (t1) half-bandwidth
  const int K = f2.p;  // outer (t2) half-bandwidth
  Eigen::MatrixXd table(2 * K + 1, 2 * L + 1);
  for (int k = -K; k <= K; ++k)
    for (int l = -L; l <= L; ++l)
      table(K + k, L + l) =
          h2.coeff(k) * f1.coeff(l) / nu + nu * f2.coeff(k) * h1.coeff(l);
  return table;
}

Eigen::MatrixXd two_level_toeplitz(int m_outer, int m_inner, const Eigen::MatrixXd& table) {
  if (table.rows() % 2 == 0 || table.cols() % 2 == 0)
    throw std::invalid_argument("two_level_toeplitz: coefficient table must have odd sizes");
  const int K = static_cast<int>(table.rows() - 1) / 2;
  const int L = static_cast<int>(table.cols() - 1) / 2;

  // One inner Toeplitz block per outer offset.
  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    SymbolCoeffs row;
    row.p = L;
    row.c = table.row(K + k).transpose();
    blocks[static_cast<std::size_t>(K + k)] = toeplitz(m_inner, row);
  }

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m_outer * m_inner, m_outer * m_inner);
  for (int I = 0; I < m_outer; ++I) {
    const int J_lo = std::max(0, I - K);
    const int J_hi = std::min(m_outer - 1, I + K);
    for (int J = J_lo; J <= J_hi; ++J)
      out.block(I * m_inner, J * m_inner, m_inner, m_inner) =
          blocks[static_cast<std::size_t>(K + (I - J))];
  }
  return out;
}

Eigen::MatrixXd two_level_toeplitz(int m_outer, int m_inner, const TwoLevelSymbol& g) {
  return two_level_toeplitz(m_outer, m_inner, g.coeff_table());
}

Eigen::VectorXd sample_symbol(const SymbolCoeffs& coeffs, int N) {
  if (N < 1) throw std::invalid_argument("sample_symbol: N must be positive");
  Eigen::VectorXd vals(N);
  for (int j = 1; j <= N; ++j) {
    const double theta = -kPi + (2.0 * j - 1.0) * kPi / N;
    vals(j - 1) = coeffs.eval(theta);
  }
  std::sort(vals.data(), vals.data() + vals.size());
  return vals;
}

Eigen::VectorXd sample_symbol(const TwoLevelSymbol& g, int N_outer, int N_inner) {
  if (N_outer < 1 || N_inner < 1)
    throw std::invalid_argument("sample_symbol: grid sizes must be positive");
  Eigen::VectorXd vals(N_outer * N_inner);
  int idx = 0;
  for (int j2 = 1; j2 <= N_outer; ++j2) {
    const double t2 = -kPi + (2.0 * j2 - 1.0) * kPi / N_outer;
    for (int j1 = 1; j1 <= N_inner; ++j1) {
      const double t1 = -kPi + (2.0 * j1 - 1.0) * kPi / N_inner;
      vals(idx++) = g.eval(t1, t2);
    }
  }
  std::sort(vals.data(), vals.data() + vals.size());
  return vals;
}

DistributionStats distribution_distance(const Eigen::VectorXd& eigs,
                                        const Eigen::VectorXd& samples,
                                        double outlier_tol) {
  if (eigs.size() != samples.size())
    throw std::invalid_argument("distribution_distance: length mismatch (" +
                                std::to_string(eigs.size()) + " vs " +
                                std::to_string(samples.size()) + ")");
  DistributionStats stats;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double d = std::abs(eigs(i) - samples(i));
    stats.mean_abs += d;
    stats.max_abs = std::max(stats.max_abs, d);
    if (d > outlier_tol) ++stats.outliers;
  }
  stats.mean_abs /= static_cast<double>(eigs.size());
  return stats;
}

}  // namespace gbspectra
