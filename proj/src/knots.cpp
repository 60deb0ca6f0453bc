#include "gbspectra/knots.hpp"

#include <stdexcept>
#include <string>

namespace gbspectra {

KnotVector make_knots(int n, int p) {
  if (n < 2)
    throw std::invalid_argument("make_knots: need at least 2 elements, got n=" +
                                std::to_string(n));
  if (p < 1)
    throw std::invalid_argument("make_knots: need degree >= 1, got p=" + std::to_string(p));

  KnotVector kv;
  kv.n = n;
  kv.p = p;
  kv.knots.assign(static_cast<std::size_t>(n + 2 * p + 1), 0.0);
  for (int j = 1; j < n; ++j)
    kv.knots[static_cast<std::size_t>(p + j)] = static_cast<double>(j) / n;
  for (int i = n + p; i <= n + 2 * p; ++i) kv.knots[static_cast<std::size_t>(i)] = 1.0;
  return kv;
}

}  // namespace gbspectra
