#pragma once

#include <Eigen/Core>

#include <optional>

#include "gbspectra/section_space.hpp"

namespace gbspectra {

enum class SymbolKind { F, H };  // F: stiffness-type (f(0)=0), H: mass-type (h(0)=1)

/// Real even trigonometric polynomial c_0 + 2*sum_{k=1..p} c_k cos(k theta),
/// stored as the banded coefficients c_{-p}..c_p of a symmetric Toeplitz
/// stencil.
struct SymbolCoeffs {
  int p = 0;
  Eigen::VectorXd c;  ///< size 2p+1, c(k+p) = c_k, c_{-k} = c_k
  SymbolKind kind = SymbolKind::F;
  std::optional<SectionSpace> space;  ///< provenance, when extracted

  [[nodiscard]] double coeff(int k) const { return c(k + p); }
  [[nodiscard]] double eval(double theta) const;
};

/// m x m symmetric banded Toeplitz matrix T(i,j) = c_{i-j}.
Eigen::MatrixXd toeplitz(int m, const SymbolCoeffs& coeffs);

/// Kronecker product, row-major block convention: (X kron Y) has blocks
/// X(i,j) * Y.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& X, const Eigen::MatrixBase<DerivedB>& Y) {
  using Mat = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat out(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      out.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y.derived();
  return out;
}

/// Bivariate symbol g(t1,t2) = (1/nu) h2(t2) f1(t1) + nu f2(t2) h1(t1).
/// The outer Toeplitz level corresponds to t2 (direction 2), the inner one
/// to t1, matching the row-major Kronecker convention above.
struct TwoLevelSymbol {
  SymbolCoeffs f1, h1, f2, h2;
  double nu = 1.0;

  [[nodiscard]] double eval(double t1, double t2) const {
    return h2.eval(t2) * f1.eval(t1) / nu + nu * f2.eval(t2) * h1.eval(t1);
  }

  /// Fourier coefficient table g_{k,l}, k outer (t2) in [-K..K] rows,
  /// l inner (t1) in [-L..L] columns.
  [[nodiscard]] Eigen::MatrixXd coeff_table() const;
};

/// Two-level Toeplitz matrix: m_outer x m_outer blocks, each m_inner x
/// m_inner, block (I,J) has entries g_{I-J, i-j} from the coefficient table
/// (row index K+k, column index L+l for a (2K+1)x(2L+1) table).
Eigen::MatrixXd two_level_toeplitz(int m_outer, int m_inner, const Eigen::MatrixXd& table);
Eigen::MatrixXd two_level_toeplitz(int m_outer, int m_inner, const TwoLevelSymbol& g);

/// Symbol samples on the open uniform grid theta_j = -pi + (2j-1) pi / N,
/// j = 1..N, sorted ascending.
Eigen::VectorXd sample_symbol(const SymbolCoeffs& coeffs, int N);

/// Bivariate samples over the N_outer x N_inner open grid, sorted ascending.
Eigen::VectorXd sample_symbol(const TwoLevelSymbol& g, int N_outer, int N_inner);

/// Comparison of two equally long sorted sequences (eigenvalues vs symbol
/// samples). Throws std::invalid_argument on length mismatch.
struct DistributionStats {
  double mean_abs = 0.0;
  double max_abs = 0.0;
  int outliers = 0;  ///< entries with |difference| > outlier_tol
};
DistributionStats distribution_distance(const Eigen::VectorXd& eigs,
                                        const Eigen::VectorXd& samples,
                                        double outlier_tol);

}  // namespace gbspectra
