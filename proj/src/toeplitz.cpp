#include "gbspectra/toeplitz.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gbspectra {

namespace {

const double kPi = std::acos(-1.0);

/// Central-row read without the refinement cross-check or validation.
SymbolCoeffs central_row(const GalerkinSet1D& set, SymbolKind kind) {
  const int m = set.size();
  const int p = set.p;
  const Eigen::MatrixXd& X = (kind == SymbolKind::F) ? set.K : set.M;
  const int r0 = (m + 1) / 2 - 1;  // 0-based central row

  SymbolCoeffs sym;
  sym.p = p;
  sym.kind = kind;
  sym.space = set.space;
  sym.c.resize(2 * p + 1);
  for (int k = -p; k <= p; ++k)
    sym.c(k + p) = 0.5 * (X(r0, r0 + k) + X(r0, r0 - k));  // symmetrized
  return sym;
}

void validate_symbol(const SymbolCoeffs& sym, const GalerkinSet1D& set) {
  const char* what = (sym.kind == SymbolKind::F) ? "stiffness" : "mass";
  // The theta=0 anchors (f(0)=0, h(0)=1) encode constant reproduction. At
  // degree 1 a generalized section space holds only the two section
  // functions, no constants, so the anchors apply to polynomial sections or
  // degree >= 2.
  if (set.space.is_polynomial() || set.p >= 2) {
    const double at_zero = sym.eval(0.0);
    const double expected = (sym.kind == SymbolKind::F) ? 0.0 : 1.0;
    if (std::abs(at_zero - expected) > 1e-10) {
      std::ostringstream os;
      os << "extracted " << what << " symbol violates value " << expected
         << " at theta=0: got " << at_zero << " (n=" << set.n << ", p=" << set.p << ")";
      throw std::runtime_error(os.str());
    }
  }
  // Sign condition on a dense grid: f >= 0 with a genuine positive part,
  // h strictly positive.
  constexpr int kGrid = 512;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 1; j <= kGrid; ++j) {
    const double v = sym.eval(-kPi + (2.0 * j - 1.0) * kPi / kGrid);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool ok = (sym.kind == SymbolKind::F) ? (lo >= -1e-12 && hi > 1e-6)
                                              : (lo > 1e-12);
  if (!ok) {
    std::ostringstream os;
    os << "extracted " << what << " symbol violates its sign condition: range [" << lo
       << ", " << hi << "] (n=" << set.n << ", p=" << set.p << ")";
    throw std::runtime_error(os.str());
  }
}

}  // namespace

SymbolCoeffs extract_symbol(const GalerkinSet1D& set, SymbolKind kind) {
  if (set.n < 3 * set.p + 1)
    throw std::invalid_argument("extract_symbol: need n >= 3p+1 = " +
                                std::to_string(3 * set.p + 1) +
                                " so the central row only sees translates, got n=" +
                                std::to_string(set.n));

  SymbolCoeffs sym = central_row(set, kind);

  // Polynomial and non-nested spaces have n-independent symbols: re-extract
  // on the refined mesh and demand agreement.
  if (set.space.is_polynomial() || set.space.mode == RefinementMode::NonNested) {
    const GalerkinSet1D refined = assemble_1d(2 * set.n, set.p, set.space);
    const SymbolCoeffs again = central_row(refined, kind);
    const double dev = (sym.c - again.c).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
      std::ostringstream os;
      os << "extract_symbol: symbol is not stable under mesh refinement (deviation " << dev
         << " between n=" << set.n << " and n=" << 2 * set.n << ", p=" << set.p << ")";
      throw std::runtime_error(os.str());
    }
  }

  validate_symbol(sym, set);
  return sym;
}

SymbolCoeffs extract_symbol(int p, const SectionSpace& space, int n, SymbolKind kind) {
  return extract_symbol(assemble_1d(n, p, space), kind);
}

ToeplitzParts toeplitz_parts(const GalerkinSet1D& set) {
  ToeplitzParts parts;
  parts.f = extract_symbol(set, SymbolKind::F);
  parts.h = extract_symbol(set, SymbolKind::H);
  parts.B = toeplitz(set.size(), parts.f);
  parts.C = toeplitz(set.size(), parts.h);
  parts.R = set.K - parts.B;
  parts.S = set.M - parts.C;
  return parts;
}

}  // namespace gbspectra
