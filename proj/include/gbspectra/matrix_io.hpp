#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>

#include "gbspectra/symbols.hpp"

namespace gbspectra {

/// Dense CSV: a `# size=<rows>x<cols>` header line, then one comma-separated
/// row per line, values printed with %.17g so a round trip is bit-exact.
void write_dense_csv(std::ostream& os, const Eigen::MatrixXd& X);
void write_dense_csv(const std::string& path, const Eigen::MatrixXd& X);
Eigen::MatrixXd read_dense_csv(std::istream& is);
Eigen::MatrixXd read_dense_csv(const std::string& path);

/// Banded text format for matrices with small bandwidth:
///   line 1: `<size> <bandwidth>`
///   then one line per diagonal offset in [-bandwidth, bandwidth]:
///   `<offset> v_0 v_1 ...` (the diagonal's entries, %.17g).
/// Entries outside the band are dropped on write and zero on read.
void write_banded(std::ostream& os, const Eigen::MatrixXd& X, int bandwidth);
void write_banded(const std::string& path, const Eigen::MatrixXd& X, int bandwidth);
Eigen::MatrixXd read_banded(std::istream& is);
Eigen::MatrixXd read_banded(const std::string& path);

/// Smallest bandwidth containing every entry with |x| > drop_tol.
int detect_bandwidth(const Eigen::MatrixXd& X, double drop_tol = 0.0);

/// Symbol coefficients as `k,c_k` rows (k = -p..p), header `k,c`.
void write_symbol_csv(std::ostream& os, const SymbolCoeffs& sym);
void write_symbol_csv(const std::string& path, const SymbolCoeffs& sym);

/// Symbol samples as `theta,value` rows on the open uniform grid of size N,
/// header `theta,value`.
void write_sample_csv(std::ostream& os, const SymbolCoeffs& sym, int N);
void write_sample_csv(const std::string& path, const SymbolCoeffs& sym, int N);

}  // namespace gbspectra
