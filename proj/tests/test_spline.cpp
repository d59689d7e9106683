#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "compandor/compressor.hpp"
#include "compandor/error.hpp"
#include "compandor/quantizer.hpp"
#include "compandor/spline.hpp"

using namespace compandor;

namespace {

constexpr double kXmax128 = 7.9787103216196352;

// Closed-form compressor written independently of the library.
double compressor_formula(double x, double x_max) {
  const double k = std::sqrt(2.0) / 3.0;
  return x_max * (1.0 - std::exp(-k * x)) / (1.0 - std::exp(-k * x_max));
}

FirstDegreeSpline random_monotone_spline(std::mt19937_64& rng, int pieces) {
  std::uniform_real_distribution<double> step(0.01, 3.0);
  std::vector<double> k{step(rng) - 1.5}, v{step(rng)};
  for (int i = 0; i < pieces; ++i) {
    k.push_back(k.back() + step(rng));
    v.push_back(v.back() + step(rng));
  }
  return FirstDegreeSpline::build(k, v);
}

}  // namespace

TEST(Spline, TwoPointLine) {
  const std::vector<double> k{0.0, 1.0}, v{0.0, 1.0};
  const auto s = FirstDegreeSpline::build(k, v);
  ASSERT_EQ(s.piece_count(), 1u);
  EXPECT_EQ(s.slopes()[0], 1.0);
  EXPECT_EQ(s.eval(0.25), 0.25);
  EXPECT_EQ(s.invert(0.4), 0.4);
}

TEST(Spline, SlopesFromDifferenceQuotients) {
  const std::vector<double> k{0.0, 1.0, 2.0}, v{0.0, 1.0, 1.0};
  const auto s = FirstDegreeSpline::build(k, v);
  EXPECT_EQ(s.slopes()[0], 1.0);
  EXPECT_EQ(s.slopes()[1], 0.0);
  EXPECT_FALSE(s.strictly_increasing());
  EXPECT_THROW(s.invert(0.5), Error);
}

TEST(Spline, CompressorKnotSlopes) {
  const std::vector<double> k{0.0, 0.6048, 1.4539, 2.8921, 7.9788};
  std::vector<double> v;
  for (double x : k) v.push_back(compressor_formula(x, 7.9788));
  const auto s = FirstDegreeSpline::build(k, v);
  const double expected[] = {3.3507, 2.3863, 1.4090, 0.3735};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(s.slopes()[i], expected[i], 5e-4) << i;
    EXPECT_NEAR(s.slopes()[i], (v[i + 1] - v[i]) / (k[i + 1] - k[i]), 1e-12);
  }
}

TEST(Spline, RejectsMalformedInput) {
  const std::vector<double> one{0.0}, two{0.0, 1.0}, three{0.0, 1.0, 2.0};
  const std::vector<double> dup{0.0, 1.0, 1.0}, down{0.0, 2.0, 1.0};
  EXPECT_THROW(FirstDegreeSpline::build(two, three), Error);
  EXPECT_THROW(FirstDegreeSpline::build(one, one), Error);
  EXPECT_THROW(FirstDegreeSpline::build(dup, three), Error);
  EXPECT_THROW(FirstDegreeSpline::build(down, three), Error);
}

TEST(Spline, EvalAtKnotsMidpointsAndOutside) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_monotone_spline(rng, 1 + trial % 7);
    const auto k = s.knots();
    const auto v = s.values();
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_EQ(s.eval(k[i]), v[i]);
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
      EXPECT_NEAR(s.eval(0.5 * (k[i] + k[i + 1])), 0.5 * (v[i] + v[i + 1]), 1e-12);
    EXPECT_DOUBLE_EQ(s.eval(k.back() + 1.0), v.back() + s.slopes().back());
    EXPECT_NEAR(s.eval(k.front() - 2.0), v.front() - 2.0 * s.slopes().front(), 1e-12);
  }
}

TEST(Spline, ContinuityAtInteriorKnots) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_monotone_spline(rng, 2 + trial % 9);
    const auto k = s.knots();
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
      const double left = s.piece_value(i - 1, k[i]);
      const double right = s.piece_value(i, k[i]);
      EXPECT_LE(std::abs(left - right), 1e-13 * std::max(1.0, std::abs(right)));
    }
  }
}

TEST(Spline, InvertIsExactLinearInverse) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_monotone_spline(rng, 5);
    const auto k = s.knots();
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_EQ(s.invert(s.values()[i]), k[i]);
    std::uniform_real_distribution<double> u(k.front(), k.back());
    for (int j = 0; j < 50; ++j) {
      const double x = u(rng);
      EXPECT_NEAR(s.invert(s.eval(x)), x, 1e-12 * std::max(1.0, std::abs(x)));
    }
    EXPECT_THROW(s.invert(s.values().back() + 1.0), Error);
    EXPECT_THROW(s.invert(s.values().front() - 1.0), Error);
  }
}

TEST(Spline, PieceLookupIsHalfOpen) {
  const std::vector<double> k{0.0, 1.0, 2.0, 3.0}, v{0.0, 2.0, 3.0, 3.5};
  const auto s = FirstDegreeSpline::build(k, v);
  EXPECT_EQ(s.piece(-1.0), 0u);
  EXPECT_EQ(s.piece(0.999), 0u);
  EXPECT_EQ(s.piece(1.0), 1u);
  EXPECT_EQ(s.piece(3.0), 2u);
  EXPECT_EQ(s.piece(9.0), 2u);
}

TEST(Spline, OddExtension) {
  const std::vector<double> k{0.0, 1.0, 2.0}, v{0.0, 2.0, 3.0};
  const auto s = FirstDegreeSpline::build(k, v);
  EXPECT_EQ(s.eval_odd(-1.5), -s.eval(1.5));
  EXPECT_EQ(s.eval_odd(0.5), s.eval(0.5));
  const std::vector<double> shifted{1.0, 2.0, 3.0};
  EXPECT_THROW(FirstDegreeSpline::build(k, shifted).eval_odd(1.0), Error);
}

TEST(SplineCompressor, ApproximantSlopesDecrease) {
  const OptimalCompressor c(unit_laplacian(), kXmax128);
  for (int l : {1, 2, 4, 8, 16}) {
    const auto th = segment_thresholds(128, l, c);
    const auto s = approximate_compressor(c, th);
    for (std::size_t i = 0; i < s.piece_count(); ++i) {
      EXPECT_GT(s.slopes()[i], 0.0);
      if (i > 0) EXPECT_LT(s.slopes()[i], s.slopes()[i - 1]);
    }
    for (std::size_t i = 0; i < th.size(); ++i) EXPECT_EQ(s.eval(th[i]), c.compress(th[i]));
  }
}

TEST(SplineCompressor, ApproximationErrorShrinksWithRefinement) {
  const OptimalCompressor c(unit_laplacian(), kXmax128);
  const auto coarse = approximate_compressor(c, segment_thresholds(128, 4, c));
  const auto finer = approximate_compressor(c, segment_thresholds(128, 8, c));
  std::vector<double> dense(1000);
  for (std::size_t i = 0; i < dense.size(); ++i) dense[i] = kXmax128 * i / (dense.size() - 1.0);
  const auto fine = approximate_compressor(c, dense);

  const double e4 = max_abs_error(coarse, c, 4001);
  const double e8 = max_abs_error(finer, c, 4001);
  const double e1000 = max_abs_error(fine, c, 4001);
  EXPECT_GT(e4, 0.0);
  EXPECT_LT(e8, e4);
  EXPECT_LT(e1000, e8);
  // Error vanishes on a grid made only of knots.
  EXPECT_LT(max_abs_error(fine, c, 1000), 1e-12);
  EXPECT_THROW(max_abs_error(fine, c, 1), Error);
}

TEST(SplineCompressor, ErrorMatchesDenseOracle) {
  const OptimalCompressor c(unit_laplacian(), kXmax128);
  const auto s = approximate_compressor(c, segment_thresholds(128, 4, c));
  double worst = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = kXmax128 * i / 200000.0;
    worst = std::max(worst, std::abs(s.eval(x) - compressor_formula(x, kXmax128)));
  }
  EXPECT_NEAR(max_abs_error(s, c, 200001), worst, 1e-9);
}
