#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gbspectra/spectral.hpp"
#include "gbspectra/toeplitz.hpp"
#include "oracles.hpp"

using namespace gbspectra;

namespace {

SymbolCoeffs laplacian_symbol() {
  SymbolCoeffs f;
  f.p = 1;
  f.c = Eigen::Vector3d(-1.0, 2.0, -1.0);
  return f;
}

}  // namespace

TEST_CASE("symmetric eigenvalues: basics and validation") {
  Eigen::MatrixXd D = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
  const Eigen::VectorXd e = sym_eigs(D);
  CHECK(e(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e(2) == doctest::Approx(3.0).epsilon(1e-14));

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 1.0;  // grossly asymmetric
  CHECK_THROWS_AS((void)sym_eigs(bad), std::invalid_argument);
}

TEST_CASE("tridiagonal Toeplitz spectrum in closed form") {
  const Eigen::VectorXd eigs = sym_eigs(toeplitz(10, laplacian_symbol()));
  const Eigen::VectorXd exact = oracles::tridiag_spectrum(10);
  CHECK((eigs - exact).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("general eigenvalues: rotations, triangles, spot checks") {
  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const Eigen::VectorXcd e = gen_eigs(rot);
  CHECK(std::abs(e(0) - std::complex<double>(0.0, -1.0)) <= 1e-12);
  CHECK(std::abs(e(1) - std::complex<double>(0.0, 1.0)) <= 1e-12);

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(3, 3);
  tri(0, 0) = 2.0;
  tri(1, 1) = -1.0;
  tri(2, 2) = 0.5;
  tri(0, 2) = 7.0;  // strictly triangular part must not matter
  const Eigen::VectorXcd et = gen_eigs(tri);
  CHECK(et(0).real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(et(1).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(et(2).real() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gen_eigs matches sym_eigs on symmetric input") {
  auto rng = oracles::make_rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 9);
    const Eigen::MatrixXd S = symmetric_part(oracles::random_matrix(rng, m, m));
    const Eigen::VectorXd es = sym_eigs(S);
    const Eigen::VectorXcd eg = gen_eigs(S);
    for (int i = 0; i < m; ++i) {
      CHECK(std::abs(eg(i).imag()) <= 1e-8);
      CHECK(std::abs(eg(i).real() - es(i)) <= 1e-8 * (1.0 + es.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("singular values dominate the symmetric-part eigenvalues") {
  auto rng = oracles::make_rng(22);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const Eigen::MatrixXd X = oracles::random_matrix(rng, m, m);
    const Eigen::VectorXd s = singular_values(X);  // descending
    Eigen::VectorXd re = sym_eigs(symmetric_part(X));
    std::reverse(re.data(), re.data() + re.size());  // descending
    for (int j = 0; j < m; ++j) CHECK(s(j) >= re(j) - 1e-10);
  }
}

TEST_CASE("eigenvalues live in the numerical-range rectangle") {
  auto rng = oracles::make_rng(33);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const Eigen::MatrixXd X = oracles::random_matrix(rng, m, m);
    const Eigen::VectorXd re = sym_eigs(symmetric_part(X));
    const Eigen::MatrixXd skew = 0.5 * (X - X.transpose());
    const double imag_bound = singular_values(skew)(0);
    const Eigen::VectorXcd e = gen_eigs(X);
    const double tol = 1e-9 * (1.0 + X.cwiseAbs().maxCoeff());
    for (int i = 0; i < m; ++i) {
      CHECK(e(i).real() >= re(0) - tol);
      CHECK(e(i).real() <= re(m - 1) + tol);
      CHECK(std::abs(e(i).imag()) <= imag_bound + tol);
    }
  }
}

TEST_CASE("trace equals the eigenvalue sum") {
  auto rng = oracles::make_rng(44);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 3 + static_cast<int>(rng() % 8);
    const Eigen::MatrixXd X = oracles::random_matrix(rng, m, m);
    const Eigen::VectorXcd e = gen_eigs(X);
    std::complex<double> sum = 0.0;
    for (int i = 0; i < m; ++i) sum += e(i);
    CHECK(std::abs(sum.real() - X.trace()) <= 1e-9 * (1.0 + std::abs(X.trace())));
    CHECK(std::abs(sum.imag()) <= 1e-9 * (1.0 + X.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("singular values, rank, condition number") {
  Eigen::MatrixXd D = Eigen::Vector3d(3.0, 0.5, 2.0).asDiagonal();
  const Eigen::VectorXd s = singular_values(D);
  CHECK(s(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s(2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(condition_2(D) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(condition_2(Eigen::MatrixXd::Identity(4, 4)) == doctest::Approx(1.0));

  // rank-1 outer product
  Eigen::VectorXd u(4);
  u << 1, 2, 3, 4;
  const Eigen::MatrixXd R1 = u * u.transpose();
  CHECK(numerical_rank(singular_values(R1)) == 1);
  CHECK(numerical_rank(singular_values(Eigen::MatrixXd::Zero(3, 3))) == 0);
  // a roundoff-scale matrix keeps its relative rank but drops below an
  // absolute floor tied to the parent problem
  const Eigen::MatrixXd tiny = 1e-16 * R1;
  CHECK(numerical_rank(singular_values(tiny)) == 1);
  CHECK(numerical_rank(singular_values(tiny), 1e-10, 1e-12) == 0);

  CHECK_THROWS_AS((void)condition_2(R1), std::domain_error);

  // scale invariance
  auto rng = oracles::make_rng(55);
  const Eigen::MatrixXd X =
      oracles::random_matrix(rng, 6, 6) + 6.0 * Eigen::MatrixXd::Identity(6, 6);
  const double c1 = condition_2(X);
  const double c2 = condition_2((137.0 * X).eval());
  CHECK(std::abs(c1 - c2) <= 1e-10 * c1);
}

TEST_CASE("pencil eigenvalues via Cholesky congruence") {
  const GalerkinSet1D set = assemble_1d(16, 2, SectionSpace{});
  const Eigen::VectorXd pe = pencil_eigs(set.K, set.M);

  // restated through the symmetric inverse square root of M
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(set.M);
  const Eigen::MatrixXd Minv_half = es.operatorInverseSqrt();
  const Eigen::VectorXd direct = sym_eigs(Minv_half * set.K * Minv_half);
  CHECK((pe - direct).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + direct.cwiseAbs().maxCoeff()));

  // identical matrices give the all-ones spectrum
  const Eigen::VectorXd ones = pencil_eigs(set.M, set.M);
  CHECK((ones - Eigen::VectorXd::Ones(ones.size())).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("mass extreme estimates") {
  const std::vector<int> grid = {16, 32, 64};
  const CpEstimate est = estimate_Cp(1, SectionSpace{}, grid);
  CHECK(est.c_low >= 1.0 / 3.0 - 1e-10);
  CHECK(est.c_high <= 1.0 + 1e-10);
  CHECK(est.c_low < est.c_high);

  // the estimate is stable across the grid (< 20% variation)
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n : grid) {
    const double v = sym_eigs(assemble_1d(n, 2, SectionSpace{}).M)(0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK((hi - lo) / lo < 0.2);
}

TEST_CASE("lower-bound checks pass on representative grids") {
  const SectionSpace trig = parse_space("trig:1:nested");
  const CpEstimate est = estimate_Cp(2, trig, {16, 32, 64});
  for (const auto& c : check_theorem_mineig(2, trig, 32, est.c_low)) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  for (const auto& c : check_eq10(2, trig, 16, 1.0, 1.0, est.c_low)) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  CHECK_THROWS_AS((void)check_theorem_mineig(1, trig, 16, 0.3), std::invalid_argument);
}

TEST_CASE("small stiffness eigenvalues follow j^2 pi^2 / n^2") {
  const ParterTable table = check_parter(2, SectionSpace{}, {1, 2, 3}, {16, 32, 64});
  REQUIRE(table.rows.size() == 9);
  for (const auto& c : table.flags) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  // the ratio data itself lands near 1 at n = 64
  for (const auto& row : table.rows)
    if (row.n == 64) CHECK(row.deviation < 0.05);

  CHECK_THROWS_AS((void)check_parter(2, SectionSpace{}, {5}, {4}), std::invalid_argument);
}

TEST_CASE("spectral-distribution lemma flags") {
  for (const char* spec : {"poly", "trig:1:nonnested"}) {
    const SectionSpace space = parse_space(spec);
    for (const auto& c : check_specdist_lemma(2, space, {8, 16, 32})) {
      CAPTURE(spec);
      CAPTURE(c.name);
      CHECK(c.pass);
    }
  }
  CHECK_THROWS_AS((void)check_specdist_lemma(3, SectionSpace{}, {8}), std::invalid_argument);
}
