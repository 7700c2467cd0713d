#pragma once
// Two-sided Fisher exact test on 2x2 contingency tables.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "stacksolve/core.hpp"

namespace stacksolve::stats {

class DegenerateMargins : public Error {
 public:
  DegenerateMargins() : Error("contingency table has an empty row or column") {}
};

/// {{a, b}, {c, d}}: rows are groups, columns are outcomes.
using Table2x2 = std::array<std::array<std::uint64_t, 2>, 2>;

inline double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

/// Sum of the hypergeometric probabilities of every table with the observed
/// margins that is no more likely than the observed one (relative slack 1e-12).
inline double fisher_exact(const Table2x2& t) {
  const std::uint64_t a = t[0][0], b = t[0][1], c = t[1][0], d = t[1][1];
  const std::uint64_t row1 = a + b, row2 = c + d, col1 = a + c, col2 = b + d;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) throw DegenerateMargins();
  const std::uint64_t n = row1 + row2;

  const double log_denominator = log_choose(n, col1);
  auto log_prob = [&](std::uint64_t x) {
    return log_choose(row1, x) + log_choose(row2, col1 - x) - log_denominator;
  };

  const std::uint64_t lo = col1 > row2 ? col1 - row2 : 0;
  const std::uint64_t hi = std::min(row1, col1);
  const double observed = log_prob(a);
  const double threshold = observed + std::log1p(1e-12);
  double p = 0.0;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const double lp = log_prob(x);
    if (lp <= threshold) p += std::exp(lp);
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace stacksolve::stats
