#include <gtest/gtest.h>

#include <cmath>

#include "fisher_oracle.hpp"
#include "stacksolve/stats.hpp"

using namespace stacksolve;

TEST(Fisher, BalancedTableIsOne) { EXPECT_NEAR(stats::fisher_exact({{{5, 5}, {5, 5}}}), 1.0, 1e-12); }

TEST(Fisher, PerfectSeparation) {
  // Only the two extreme tables are as unlikely as the observed one: 2 / C(20, 10).
  const double expected = 2.0 / 184756.0;
  const double p = stats::fisher_exact({{{10, 0}, {0, 10}}});
  EXPECT_NEAR(p / expected, 1.0, 1e-9);
  EXPECT_NEAR(p, 1.0825e-5, 1e-9);
}

TEST(Fisher, SymmetricUnderRowAndColumnSwaps) {
  const double p = stats::fisher_exact({{{7, 2}, {3, 8}}});
  EXPECT_NEAR(stats::fisher_exact({{{3, 8}, {7, 2}}}), p, 1e-12);
  EXPECT_NEAR(stats::fisher_exact({{{2, 7}, {8, 3}}}), p, 1e-12);
  EXPECT_NEAR(stats::fisher_exact({{{7, 3}, {2, 8}}}), p, 1e-12);
}

TEST(Fisher, DegenerateMarginsThrow) {
  EXPECT_THROW(stats::fisher_exact({{{0, 0}, {3, 4}}}), stats::DegenerateMargins);
  EXPECT_THROW(stats::fisher_exact({{{5, 0}, {7, 0}}}), stats::DegenerateMargins);
}

TEST(Fisher, ExhaustiveSweepAgainstIntegerOracle) {
  std::size_t tables = 0;
  double worst = 0;
  oracle::for_each_table(12, [&](auto a, auto b, auto c, auto d) {
    const double p = stats::fisher_exact({{{a, b}, {c, d}}});
    const double o = static_cast<double>(oracle::fisher_two_sided(a, b, c, d));
    const double rel = std::abs(p - o) / o;
    worst = std::max(worst, rel);
    ASSERT_LE(rel, 1e-9) << a << " " << b << " " << c << " " << d;
    ASSERT_GT(p, 0.0);
    ASSERT_LE(p, 1.0);
    ++tables;
  });
  EXPECT_GT(tables, 1000u);
  RecordProperty("worst_relative_error", std::to_string(worst));
}
