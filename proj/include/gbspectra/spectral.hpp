#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "gbspectra/assembly.hpp"
#include "gbspectra/toeplitz.hpp"

namespace gbspectra {

/// Eigenvalues of a symmetric matrix, ascending. The input is validated
/// (||S - S^T||_inf <= 1e-10 ||S||_inf, else std::invalid_argument) and
/// symmetrized before solving. Backed by tridiagonalization + implicit QR.
Eigen::VectorXd sym_eigs(const Eigen::MatrixXd& S);

/// Eigenvalues of a general real square matrix (Hessenberg reduction +
/// shifted QR, at most 100*size iterations; std::runtime_error on
/// non-convergence). Sorted by (real, imag). Three eigenvalues are
/// spot-checked through the LU pivot product of X - lambda I.
Eigen::VectorXcd gen_eigs(const Eigen::MatrixXd& X);

/// Singular values, descending, via SVD (accurate also near zero).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& X);

/// Count of singular values above max(rel_tol * s_max, abs_floor); 0 for a
/// zero matrix. Pass an abs_floor tied to the parent problem's scale when
/// the matrix may be an exact zero buried in roundoff (a purely relative
/// cut would then count noise directions as rank).
int numerical_rank(const Eigen::VectorXd& singvals, double rel_tol = 1e-10,
                   double abs_floor = 0.0);

/// 2-norm condition number s_max / s_min; std::domain_error when the matrix
/// is numerically singular.
double condition_2(const Eigen::MatrixXd& X);

/// Generalized eigenvalues of the symmetric-definite pencil (K, M),
/// ascending, via the Cholesky congruence L^{-1} K L^{-T} with M = L L^T.
Eigen::VectorXd pencil_eigs(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M);

inline Eigen::MatrixXd symmetric_part(const Eigen::MatrixXd& X) {
  return 0.5 * (X + X.transpose());
}

/// One verified inequality: pass iff measured satisfies the bound within the
/// check's slack (direction depends on the check; `measured` and `bound` are
/// reported as-is for the record).
struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Spectral mass-extreme estimates over an n-grid:
///   c_low  = min_n lambda_min(M_{n,p})   (the C_p^Q estimate)
///   c_high = max_n lambda_max(M_{n,p})
struct CpEstimate {
  double c_low = 0.0;
  double c_high = 0.0;
};
CpEstimate estimate_Cp(int p, const SectionSpace& space, const std::vector<int>& n_list);

/// Lower-bound theorem for the mass/stiffness extremes at a single n:
///   lambda_min(M) >= C_p_est,  pencil (K,M) min >= pi^2/n^2,
///   lambda_min(K) >= pi^2 C_p_est / n^2.
std::vector<BoundCheck> check_theorem_mineig(int p, const SectionSpace& space, int n,
                                             double C_p_est);

/// Resolvent-style lower bound chain for A = nK + beta H + (gamma/n) M:
///   |lambda|_min(A) >= lambda_min(Re A) >= C_p_est (pi^2 + gamma) / n.
std::vector<BoundCheck> check_eq10(int p, const SectionSpace& space, int n, double beta,
                                   double gamma, double C_p_est);

/// Small-eigenvalue asymptotics of K: n^2 lambda_j(K) -> j^2 pi^2.
struct ParterRow {
  int j = 0;
  int n = 0;
  double n2_lambda = 0.0;  ///< n^2 lambda_j(K)
  double ratio = 0.0;      ///< n2_lambda / (j^2 pi^2)
  double deviation = 0.0;  ///< |ratio - 1|
};
struct ParterTable {
  std::vector<ParterRow> rows;
  std::vector<BoundCheck> flags;  ///< per-j monotonicity + final deviation
};
ParterTable check_parter(int p, const SectionSpace& space, const std::vector<int>& j_list,
                         const std::vector<int>& n_list);

/// Extreme-eigenvalue behaviour of the Toeplitz parts B (from f) and C
/// (from h) across n: monotone trends and limits. Which items apply depends
/// on the refinement mode (nested families approach the polynomial symbols;
/// non-nested families have fixed symbols). n below 3p+1 is skipped (symbol
/// extraction precondition).
std::vector<BoundCheck> check_specdist_lemma(int p, const SectionSpace& space,
                                             const std::vector<int>& n_list);

}  // namespace gbspectra
