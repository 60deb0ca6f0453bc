#pragma once

#include <Eigen/Core>

#include "gbspectra/assembly.hpp"
#include "gbspectra/symbols.hpp"

namespace gbspectra {

/// Extract the Toeplitz symbol of the normalized K (kind F) or M (kind H)
/// as the central row (index ceil((n+p-2)/2), 1-based) with offsets -p..p.
/// Requires n >= 3p+1 so the row only touches interior (translate) basis
/// functions. For Polynomial and NonNested spaces, where the symbol is
/// n-independent, the row is cross-checked against the one extracted at 2n
/// and a deviation above 1e-10 raises std::runtime_error.
SymbolCoeffs extract_symbol(int p, const SectionSpace& space, int n, SymbolKind kind);
SymbolCoeffs extract_symbol(const GalerkinSet1D& set, SymbolKind kind);

/// Toeplitz/remainder splitting of one direction:
///   B = T_{n+p-2}(f),  R = K - B   (rank(R) <= 4p-2)
///   C = T_{n+p-2}(h),  S = M - C
struct ToeplitzParts {
  SymbolCoeffs f, h;
  Eigen::MatrixXd B, C, R, S;
};
ToeplitzParts toeplitz_parts(const GalerkinSet1D& set);

}  // namespace gbspectra
