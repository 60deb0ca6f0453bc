#include "gbspectra/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbspectra {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  return is;
}

std::vector<double> parse_row(const std::string& line, const char* what) {
  std::vector<double> out;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("malformed ") + what + " value '" + cell + "'");
    }
  }
  return out;
}

}  // namespace

void write_dense_csv(std::ostream& os, const Eigen::MatrixXd& X) {
  if (X.rows() == X.cols())
    os << "# size=" << X.rows() << "\n";
  else
    os << "# size=" << X.rows() << "x" << X.cols() << "\n";
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (j) os << ',';
      os << fmt(X(i, j));
    }
    os << "\n";
  }
}

void write_dense_csv(const std::string& path, const Eigen::MatrixXd& X) {
  auto os = open_out(path);
  write_dense_csv(os, X);
}

Eigen::MatrixXd read_dense_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# size=", 0) != 0)
    throw std::runtime_error("dense matrix stream lacks its '# size=' header");
  long rows = 0, cols = 0;
  const int got = std::sscanf(header.c_str(), "# size=%ldx%ld", &rows, &cols);
  if (got == 1) cols = rows;
  if (got < 1 || rows < 0 || cols < 0)
    throw std::runtime_error("malformed dense matrix header '" + header + "'");

  Eigen::MatrixXd X(rows, cols);
  std::string line;
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(is, line))
      throw std::runtime_error("dense matrix stream ended after " + std::to_string(i) +
                               " of " + std::to_string(rows) + " rows");
    const std::vector<double> row = parse_row(line, "matrix");
    if (static_cast<long>(row.size()) != cols)
      throw std::runtime_error("dense matrix row " + std::to_string(i) + " has " +
                               std::to_string(row.size()) + " entries, expected " +
                               std::to_string(cols));
    for (long j = 0; j < cols; ++j) X(i, j) = row[static_cast<std::size_t>(j)];
  }
  return X;
}

Eigen::MatrixXd read_dense_csv(const std::string& path) {
  auto is = open_in(path);
  return read_dense_csv(is);
}

void write_banded(std::ostream& os, const Eigen::MatrixXd& X, int bandwidth) {
  if (X.rows() != X.cols())
    throw std::invalid_argument("banded format requires a square matrix");
  const int size = static_cast<int>(X.rows());
  if (bandwidth < 0 || bandwidth >= size)
    throw std::invalid_argument("bandwidth must be in [0, size)");
  os << size << " " << bandwidth << "\n";
  for (int k = -bandwidth; k <= bandwidth; ++k) {
    os << k;
    for (int t = 0; t < size - std::abs(k); ++t) {
      const int i = k >= 0 ? t + k : t;
      const int j = k >= 0 ? t : t - k;
      os << " " << fmt(X(i, j));
    }
    os << "\n";
  }
}

void write_banded(const std::string& path, const Eigen::MatrixXd& X, int bandwidth) {
  auto os = open_out(path);
  write_banded(os, X, bandwidth);
}

Eigen::MatrixXd read_banded(std::istream& is) {
  int size = 0, bandwidth = 0;
  if (!(is >> size >> bandwidth) || size < 1 || bandwidth < 0 || bandwidth >= size)
    throw std::runtime_error("malformed banded matrix header");
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(size, size);
  for (int row = 0; row < 2 * bandwidth + 1; ++row) {
    int k = 0;
    if (!(is >> k) || k < -bandwidth || k > bandwidth)
      throw std::runtime_error("malformed banded matrix diagonal offset");
    for (int t = 0; t < size - std::abs(k); ++t) {
      double v = 0.0;
      if (!(is >> v))
        throw std::runtime_error("banded matrix diagonal " + std::to_string(k) +
                                 " ended early");
      const int i = k >= 0 ? t + k : t;
      const int j = k >= 0 ? t : t - k;
      X(i, j) = v;
    }
  }
  return X;
}

Eigen::MatrixXd read_banded(const std::string& path) {
  auto is = open_in(path);
  return read_banded(is);
}

int detect_bandwidth(const Eigen::MatrixXd& X, double drop_tol) {
  int bw = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      if (std::abs(X(i, j)) > drop_tol)
        bw = std::max(bw, static_cast<int>(std::abs(i - j)));
  return bw;
}

void write_symbol_csv(std::ostream& os, const SymbolCoeffs& sym) {
  os << "k,c\n";
  for (int k = -sym.p; k <= sym.p; ++k) os << k << "," << fmt(sym.coeff(k)) << "\n";
}

void write_symbol_csv(const std::string& path, const SymbolCoeffs& sym) {
  auto os = open_out(path);
  write_symbol_csv(os, sym);
}

void write_sample_csv(std::ostream& os, const SymbolCoeffs& sym, int N) {
  if (N < 1) throw std::invalid_argument("write_sample_csv: N must be positive");
  const double pi = std::acos(-1.0);
  os << "theta,value\n";
  for (int j = 1; j <= N; ++j) {
    const double theta = -pi + (2.0 * j - 1.0) * pi / N;
    os << fmt(theta) << "," << fmt(sym.eval(theta)) << "\n";
  }
}

void write_sample_csv(const std::string& path, const SymbolCoeffs& sym, int N) {
  auto os = open_out(path);
  write_sample_csv(os, sym, N);
}

}  // namespace gbspectra
