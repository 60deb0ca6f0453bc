#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbspectra/assembly.hpp"
#include "gbspectra/spectral.hpp"
#include "oracles.hpp"

using namespace gbspectra;

namespace {

const std::vector<std::string> kSpaceSpecs = {"poly", "hyp:1:nested", "trig:1:nested",
                                              "trig:1:nonnested"};

Eigen::VectorXd central_band(const Eigen::MatrixXd& X, int p) {
  const int m = static_cast<int>(X.rows());
  const int r0 = (m + 1) / 2 - 1;
  Eigen::VectorXd band(2 * p + 1);
  for (int k = -p; k <= p; ++k) band(k + p) = X(r0, r0 + k);
  return band;
}

}  // namespace

TEST_CASE("degree-1 polynomial rows reproduce the classical stencils") {
  const GalerkinSet1D set = assemble_1d(8, 1, SectionSpace{});
  const int r = set.size() / 2;
  // normalized mass row h*(1/6, 2/3, 1/6)*n
  CHECK(set.M(r, r - 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(set.M(r, r) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(set.M(r, r + 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  // normalized stiffness row (1/h)*(-1, 2, -1)/n
  CHECK(set.K(r, r - 1) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(set.K(r, r) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(set.K(r, r + 1) == doctest::Approx(-1.0).epsilon(1e-13));
  // advection row: int N'_{b} N_{a} = (-1/2, 0, 1/2)
  CHECK(set.H(r, r - 1) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(std::abs(set.H(r, r)) <= 1e-13);
  CHECK(set.H(r, r + 1) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("structural invariants of the 1D matrices") {
  for (const auto& spec : kSpaceSpecs)
    for (int p : {1, 2, 3})
      for (int n : {8, 16}) {
        const SectionSpace space = parse_space(spec);
        const GalerkinSet1D set = assemble_1d(n, p, space);
        const int m = set.size();
        CAPTURE(spec);
        CAPTURE(p);
        CAPTURE(n);
        REQUIRE(m == n + p - 2);

        CHECK((set.M - set.M.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((set.K - set.K.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((set.H + set.H.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(set.H.diagonal().cwiseAbs().maxCoeff() <= 1e-12);

        // bandwidth p, with exact zeros beyond it
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            if (std::abs(i - j) > p) {
              CHECK(set.M(i, j) == 0.0);
              CHECK(set.K(i, j) == 0.0);
              CHECK(set.H(i, j) == 0.0);
            }

        CHECK(sym_eigs(set.M)(0) > 0.0);
        CHECK(sym_eigs(set.K)(0) > 0.0);

        const double h_norm = set.H.cwiseAbs().rowwise().sum().maxCoeff();
        CHECK(h_norm <= 2.0 + 1e-12);
        const double m_norm = set.M.cwiseAbs().rowwise().sum().maxCoeff() / n;
        CHECK(m_norm <= static_cast<double>(p + 1) / n + 1e-12);

        CHECK(set.quadrature.disagreement <= 1e-11);
      }
}

TEST_CASE("central rows are n-independent for translation-invariant spaces") {
  for (const auto& spec : {"poly", "trig:1:nonnested"})
    for (int p : {2, 3}) {
      const SectionSpace space = parse_space(spec);
      const GalerkinSet1D ref = assemble_1d(16, p, space);
      for (int n : {32, 64}) {
        const GalerkinSet1D set = assemble_1d(n, p, space);
        CAPTURE(spec);
        CAPTURE(p);
        CAPTURE(n);
        CHECK((central_band(set.M, p) - central_band(ref.M, p)).cwiseAbs().maxCoeff() <=
              1e-12);
        CHECK((central_band(set.K, p) - central_band(ref.K, p)).cwiseAbs().maxCoeff() <=
              1e-12);
      }
    }
}

TEST_CASE("system matrix combines the three parts") {
  const GalerkinSet1D set = assemble_1d(16, 2, parse_space("trig:1:nested"));
  const double beta = 0.7, gamma = 2.5;
  const Eigen::MatrixXd A = assemble_A_1d(set, beta, gamma);
  const Eigen::MatrixXd manual = 16.0 * set.K + beta * set.H + (gamma / 16.0) * set.M;
  CHECK((A - manual).cwiseAbs().maxCoeff() <= 1e-14 * manual.cwiseAbs().maxCoeff());
  CHECK_THROWS_AS((void)assemble_A_1d(set, 1.0, -0.5), std::invalid_argument);
}

TEST_CASE("2D tensor assembly matches direct quadrature") {
  struct Combo {
    int p1, p2, n1, n2;
    const char* spec;
  };
  for (const Combo& c : {Combo{1, 2, 6, 12, "poly"}, Combo{2, 2, 6, 6, "trig:1:nonnested"},
                         Combo{2, 3, 6, 12, "hyp:1:nested"}}) {
    const SectionSpace space = parse_space(c.spec);
    const GBSplineBasis b1(make_knots(c.n1, c.p1), space);
    const GBSplineBasis b2(make_knots(c.n2, c.p2), space);
    const GalerkinSet2D set =
        assemble_2d_tensor(assemble_1d(b1), assemble_1d(b2), 1.0, 1.0, 1.0);
    const Eigen::MatrixXd direct = assemble_2d_direct(b1, b2, 1.0, 1.0, 1.0);
    CAPTURE(c.spec);
    CHECK((set.A - direct).norm() / direct.norm() <= 1e-12);
  }
}

TEST_CASE("2D tensor assembly equals the Kronecker formula") {
  const GalerkinSet1D d1 = assemble_1d(6, 2, SectionSpace{});
  const GalerkinSet1D d2 = assemble_1d(12, 2, SectionSpace{});
  const double beta1 = 0.3, beta2 = 1.2, gamma = 0.8;
  const GalerkinSet2D set = assemble_2d_tensor(d1, d2, beta1, beta2, gamma);
  const double n1 = 6, n2 = 12;
  const Eigen::MatrixXd manual =
      (n1 / n2) * kron(d2.M, d1.K) + (n2 / n1) * kron(d2.K, d1.M) +
      (beta1 / n2) * kron(d2.M, d1.H) + (beta2 / n1) * kron(d2.H, d1.M) +
      (gamma / (n1 * n2)) * kron(d2.M, d1.M);
  CHECK((set.A - manual).cwiseAbs().maxCoeff() <= 1e-13 * manual.cwiseAbs().maxCoeff());
  CHECK(set.nu() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)assemble_2d_tensor(d1, d2, 1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("2D decomposition: Toeplitz part plus a low-rank remainder") {
  const SectionSpace space = SectionSpace{};
  const int p = 2, n1 = 16, n2 = 16;
  const GalerkinSet1D d1 = assemble_1d(n1, p, space);
  const GalerkinSet1D d2 = assemble_1d(n2, p, space);
  const GalerkinSet2D set = assemble_2d_tensor(d1, d2, 1.0, 1.0, 1.0);
  const SymbolPair sym1{extract_symbol(p, space, n1, SymbolKind::F),
                        extract_symbol(p, space, n1, SymbolKind::H)};
  const SymbolPair sym2{extract_symbol(p, space, n2, SymbolKind::F),
                        extract_symbol(p, space, n2, SymbolKind::H)};
  const Decomposition2D dec = decompose_2d(set, sym1, sym2);

  CHECK(dec.rank_bound == set.m2() * (4 * p - 2) + (4 * p - 2) * set.m1() +
                              (4 * p - 2) * (4 * p - 2));
  CHECK(dec.rank <= dec.rank_bound);
  CHECK(dec.rank > 0);
  CHECK(dec.norm2 > 0.0);
  CHECK((dec.R2d - dec.R2d.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const double nu = set.nu();
  const Eigen::MatrixXd kpart = (1.0 / nu) * kron(d2.M, d1.K) + nu * kron(d2.K, d1.M);
  CHECK((dec.B2d + dec.R2d - kpart).cwiseAbs().maxCoeff() <=
        1e-12 * kpart.cwiseAbs().maxCoeff());
}

TEST_CASE("2D decomposition collapses for degree 1") {
  const SectionSpace space = SectionSpace{};
  const GalerkinSet1D d1 = assemble_1d(8, 1, space);
  const GalerkinSet2D set = assemble_2d_tensor(d1, d1, 1.0, 1.0, 1.0);
  const SymbolPair sym{extract_symbol(1, space, 8, SymbolKind::F),
                       extract_symbol(1, space, 8, SymbolKind::H)};
  const Decomposition2D dec = decompose_2d(set, sym, sym);
  CHECK(dec.numerically_zero);
  CHECK(dec.rank == 0);
}

TEST_CASE("2D decomposition rejects mismatched symbol degrees") {
  const SectionSpace space = SectionSpace{};
  const GalerkinSet1D d1 = assemble_1d(16, 2, space);
  const GalerkinSet2D set = assemble_2d_tensor(d1, d1, 1.0, 1.0, 1.0);
  const SymbolPair wrong{extract_symbol(3, space, 16, SymbolKind::F),
                         extract_symbol(3, space, 16, SymbolKind::H)};
  CHECK_THROWS_AS((void)decompose_2d(set, wrong, wrong), std::invalid_argument);
}
