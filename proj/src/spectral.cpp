#include "gbspectra/spectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gbspectra {

namespace {

const double kPi = std::acos(-1.0);

/// Sanity check for a computed eigenvalue: the characteristic determinant at
/// lambda, evaluated through LU pivots in log scale, must be far below the
/// worst-case scale s^n. Catches grossly wrong values, not last-digit noise.
void spot_check_eigenvalue(const Eigen::MatrixXd& X, std::complex<double> lambda) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXcd shifted = X.cast<std::complex<double>>();
  shifted.diagonal().array() -= lambda;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double piv = std::abs(lu.matrixLU()(i, i));
    if (piv == 0.0) return;  // exactly singular: perfect
    log_det += std::log(piv);
  }
  const double scale = X.cwiseAbs().rowwise().sum().maxCoeff() + std::abs(lambda) + 1.0;
  if (log_det > static_cast<double>(n) * std::log(scale) + std::log(1e-6)) {
    std::ostringstream os;
    os << "eigenvalue " << lambda << " fails its characteristic-determinant check "
       << "(log|det| = " << log_det << ")";
    throw std::runtime_error(os.str());
  }
}

}  // namespace

Eigen::VectorXd sym_eigs(const Eigen::MatrixXd& S) {
  if (S.rows() != S.cols()) throw std::invalid_argument("sym_eigs: matrix must be square");
  if (S.rows() == 0) return Eigen::VectorXd();
  const double scale = S.cwiseAbs().maxCoeff();
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && asym > 1e-10 * scale) {
    std::ostringstream os;
    os << "sym_eigs: matrix is not symmetric (asymmetry " << asym << " vs scale " << scale
       << ")";
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_part(S),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sym_eigs: eigensolver did not converge");
  return es.eigenvalues();
}

Eigen::VectorXcd gen_eigs(const Eigen::MatrixXd& X) {
  if (X.rows() != X.cols()) throw std::invalid_argument("gen_eigs: matrix must be square");
  const Eigen::Index n = X.rows();
  if (n == 0) return Eigen::VectorXcd();

  Eigen::RealSchur<Eigen::MatrixXd> schur;
  schur.setMaxIterations(100 * n);
  schur.compute(X, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("gen_eigs: Schur iteration did not converge");

  const Eigen::MatrixXd& T = schur.matrixT();
  std::vector<std::complex<double>> eigs;
  eigs.reserve(static_cast<std::size_t>(n));
  Eigen::Index i = 0;
  while (i < n) {
    if (i == n - 1 || T(i + 1, i) == 0.0) {
      eigs.emplace_back(T(i, i), 0.0);
      ++i;
    } else {
      const double p = 0.5 * (T(i, i) - T(i + 1, i + 1));
      const double z = std::sqrt(std::abs(p * p + T(i + 1, i) * T(i, i + 1)));
      eigs.emplace_back(T(i + 1, i + 1) + p, z);
      eigs.emplace_back(T(i + 1, i + 1) + p, -z);
      i += 2;
    }
  }
  std::sort(eigs.begin(), eigs.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  std::mt19937_64 rng(0xC0FFEE);
  std::uniform_int_distribution<std::size_t> pick(0, eigs.size() - 1);
  for (int t = 0; t < 3; ++t) spot_check_eigenvalue(X, eigs[pick(rng)]);

  Eigen::VectorXcd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out(k) = eigs[static_cast<std::size_t>(k)];
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& X) {
  if (X.size() == 0) return Eigen::VectorXd();
  // Full SVD rather than sqrt(eig(X^T X)): the Gram route halves the number
  // of correct digits exactly where rank decisions need them, near zero.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X);
  return svd.singularValues();
}

int numerical_rank(const Eigen::VectorXd& singvals, double rel_tol, double abs_floor) {
  if (singvals.size() == 0) return 0;
  const double top = singvals.maxCoeff();
  if (top <= 0.0) return 0;
  const double cut = std::max(rel_tol * top, abs_floor);
  return static_cast<int>((singvals.array() > cut).count());
}

double condition_2(const Eigen::MatrixXd& X) {
  const Eigen::VectorXd sv = singular_values(X);
  if (sv.size() == 0) throw std::domain_error("condition_2: empty matrix");
  const double smax = sv(0), smin = sv(sv.size() - 1);
  if (smax <= 0.0 || smin <= 1e-14 * smax)
    throw std::domain_error("condition_2: matrix is numerically singular");
  return smax / smin;
}

Eigen::VectorXd pencil_eigs(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M) {
  if (K.rows() != M.rows() || K.cols() != M.cols() || K.rows() != K.cols())
    throw std::invalid_argument("pencil_eigs: matrices must be square and equally sized");
  const Eigen::LLT<Eigen::MatrixXd> llt(symmetric_part(M));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("pencil_eigs: mass factor is not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd Y = L.triangularView<Eigen::Lower>().solve(K);
  const Eigen::MatrixXd W = L.triangularView<Eigen::Lower>().solve(Y.transpose());
  return sym_eigs(symmetric_part(W));
}

CpEstimate estimate_Cp(int p, const SectionSpace& space, const std::vector<int>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("estimate_Cp: empty n grid");
  CpEstimate est{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  for (int n : n_list) {
    const GalerkinSet1D set = assemble_1d(n, p, space);
    const Eigen::VectorXd eigs = sym_eigs(set.M);
    est.c_low = std::min(est.c_low, eigs(0));
    est.c_high = std::max(est.c_high, eigs(eigs.size() - 1));
  }
  return est;
}

std::vector<BoundCheck> check_theorem_mineig(int p, const SectionSpace& space, int n,
                                             double C_p_est) {
  if (p < 2)
    throw std::invalid_argument("check_theorem_mineig: the bounds hold for degree >= 2");
  const GalerkinSet1D set = assemble_1d(n, p, space);
  const double n2 = static_cast<double>(n) * n;
  std::vector<BoundCheck> out;

  auto lower = [](std::string name, double measured, double bound, double slack) {
    BoundCheck bc{std::move(name), measured, bound, false};
    bc.pass = measured >= bound - slack;
    return bc;
  };

  const double mass_min = sym_eigs(set.M)(0);
  out.push_back(lower("mass.lower", mass_min, C_p_est, 1e-10 * std::max(1.0, C_p_est)));

  const double pencil_min = pencil_eigs(set.K, set.M)(0);
  const double poincare = kPi * kPi / n2;
  out.push_back(lower("pencil.lower", pencil_min, poincare, 1e-10 * poincare));

  const double stiff_min = sym_eigs(set.K)(0);
  const double stiff_bound = kPi * kPi * C_p_est / n2;
  out.push_back(lower("stiffness.lower", stiff_min, stiff_bound, 1e-10 * stiff_bound));
  return out;
}

std::vector<BoundCheck> check_eq10(int p, const SectionSpace& space, int n, double beta,
                                   double gamma, double C_p_est) {
  const GalerkinSet1D set = assemble_1d(n, p, space);
  const Eigen::MatrixXd A = assemble_A_1d(set, beta, gamma);
  const double re_min = sym_eigs(symmetric_part(A))(0);

  const Eigen::VectorXcd eigs = gen_eigs(A);
  double mod_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    mod_min = std::min(mod_min, std::abs(eigs(i)));

  std::vector<BoundCheck> out;
  const double norm_inf = A.cwiseAbs().rowwise().sum().maxCoeff();
  BoundCheck modulus{"modulus_vs_real", mod_min, re_min, false};
  modulus.pass = mod_min >= re_min - 1e-9 * std::max(1.0, norm_inf);
  out.push_back(modulus);

  const double bound = C_p_est * (kPi * kPi + gamma) / n;
  BoundCheck lower{"real.lower", re_min, bound, false};
  lower.pass = re_min >= bound - 1e-10 * std::max(1.0, bound);
  out.push_back(lower);
  return out;
}

ParterTable check_parter(int p, const SectionSpace& space, const std::vector<int>& j_list,
                         const std::vector<int>& n_list) {
  if (j_list.empty() || n_list.empty())
    throw std::invalid_argument("check_parter: empty j or n grid");
  std::vector<int> ns = n_list;
  std::sort(ns.begin(), ns.end());
  const int m_min = ns.front() + p - 2;
  for (int j : j_list)
    if (j < 1 || j > m_min)
      throw std::invalid_argument("check_parter: eigenvalue index " + std::to_string(j) +
                                  " out of range for the smallest grid (m=" +
                                  std::to_string(m_min) + ")");

  // One stiffness spectrum per n, shared across all j.
  std::vector<Eigen::VectorXd> spectra;
  spectra.reserve(ns.size());
  for (int n : ns) spectra.push_back(sym_eigs(assemble_1d(n, p, space).K));

  ParterTable table;
  for (int j : j_list) {
    const double target = static_cast<double>(j) * j * kPi * kPi;
    std::vector<double> devs;
    for (std::size_t t = 0; t < ns.size(); ++t) {
      ParterRow row;
      row.j = j;
      row.n = ns[t];
      row.n2_lambda = static_cast<double>(ns[t]) * ns[t] * spectra[t](j - 1);
      row.ratio = row.n2_lambda / target;
      row.deviation = std::abs(row.ratio - 1.0);
      devs.push_back(row.deviation);
      table.rows.push_back(row);
    }
    const std::string tag = "j" + std::to_string(j);
    if (devs.size() >= 2) {
      double worst_rise = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 1; t < devs.size(); ++t)
        worst_rise = std::max(worst_rise, devs[t] - devs[t - 1]);
      BoundCheck mono{tag + ".decreasing", worst_rise, 1e-10, false};
      mono.pass = worst_rise <= mono.bound;
      table.flags.push_back(mono);
    }
    BoundCheck final_dev{tag + ".final", devs.back(), 0.05, false};
    final_dev.pass = final_dev.measured <= final_dev.bound;
    table.flags.push_back(final_dev);
  }
  return table;
}

std::vector<BoundCheck> check_specdist_lemma(int p, const SectionSpace& space,
                                             const std::vector<int>& n_list) {
  std::vector<int> ns;
  for (int n : n_list)
    if (n >= 3 * p + 1) ns.push_back(n);
  std::sort(ns.begin(), ns.end());
  if (ns.size() < 2)
    throw std::invalid_argument(
        "check_specdist_lemma: need at least two grids with n >= 3p+1 = " +
        std::to_string(3 * p + 1));

  const bool fixed_symbol =
      space.is_polynomial() || space.mode == RefinementMode::NonNested;

  // Reference limits: the space's own fixed symbol for non-nested refinement,
  // the polynomial symbol for nested refinement (the spaces converge to it).
  const SectionSpace limit_space = fixed_symbol ? space : SectionSpace{};
  const SymbolCoeffs f_lim = extract_symbol(p, limit_space, ns.back(), SymbolKind::F);
  const SymbolCoeffs h_lim = extract_symbol(p, limit_space, ns.back(), SymbolKind::H);
  constexpr int kDense = 4096;
  const Eigen::VectorXd f_samples = sample_symbol(f_lim, kDense);
  const Eigen::VectorXd h_samples = sample_symbol(h_lim, kDense);
  const double f_max = f_samples(f_samples.size() - 1);
  const double h_min = h_samples(0);

  std::vector<double> bmin, bmax_dist, bmax_raw, cmin_dist, cmin_raw, cmax, bsmall;
  for (int n : ns) {
    const ToeplitzParts parts = toeplitz_parts(assemble_1d(n, p, space));
    const Eigen::VectorXd be = sym_eigs(parts.B);
    const Eigen::VectorXd ce = sym_eigs(parts.C);
    bmin.push_back(be(0));
    bmax_raw.push_back(be(be.size() - 1));
    bmax_dist.push_back(std::abs(be(be.size() - 1) - f_max));
    cmin_raw.push_back(ce(0));
    cmin_dist.push_back(std::abs(ce(0) - h_min));
    cmax.push_back(ce(ce.size() - 1));
    double dev = 0.0;
    for (int j = 1; j <= 3; ++j) {
      const double ratio = static_cast<double>(n) * n * be(j - 1) / (j * j * kPi * kPi);
      dev = std::max(dev, std::abs(ratio - 1.0));
    }
    bsmall.push_back(dev);
  }

  std::vector<BoundCheck> out;
  auto trend = [&](const std::string& name, const std::vector<double>& seq, bool down) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t < seq.size(); ++t)
      worst = std::max(worst, down ? seq[t] - seq[t - 1] : seq[t - 1] - seq[t]);
    BoundCheck bc{name, worst, 1e-10, false};
    bc.pass = worst <= bc.bound;
    out.push_back(bc);
  };

  trend("Bmin.decreasing", bmin, true);
  trend("Bmax.to_limit", bmax_dist, true);
  trend("Cmin.to_limit", cmin_dist, true);
  trend("Cmax.increasing", cmax, false);

  double cmax_over = -std::numeric_limits<double>::infinity();
  for (double v : cmax) cmax_over = std::max(cmax_over, v - 1.0);
  BoundCheck below_one{"Cmax.below_one", cmax_over, 1e-10, false};
  below_one.pass = cmax_over <= below_one.bound;
  out.push_back(below_one);

  if (fixed_symbol) {
    // Rigorous for a fixed symbol: Toeplitz eigenvalues stay inside the
    // symbol range.
    double b_over = -std::numeric_limits<double>::infinity();
    for (double v : bmax_raw) b_over = std::max(b_over, v - f_max);
    BoundCheck b_in{"Bmax.below_limit", b_over, 1e-10, false};
    b_in.pass = b_over <= b_in.bound;
    out.push_back(b_in);

    double c_under = -std::numeric_limits<double>::infinity();
    for (double v : cmin_raw) c_under = std::max(c_under, h_min - v);
    BoundCheck c_in{"Cmin.above_limit", c_under, 1e-10, false};
    c_in.pass = c_under <= c_in.bound;
    out.push_back(c_in);
  }
  if (space.is_polynomial() || space.mode == RefinementMode::Nested) {
    // Small stiffness eigenvalues follow the Parter rate only when the
    // symbols converge to the polynomial ones.
    trend("Bsmall.decreasing", bsmall, true);
  }
  return out;
}

}  // namespace gbspectra
