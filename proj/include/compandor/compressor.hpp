#pragma once

#include <memory>

#include "compandor/report.hpp"
#include "compandor/source.hpp"

namespace compandor {

/// SQNR-optimal compressor for a source, mapping [-x_max, x_max] onto itself:
///
///   c(x) = sign(x) x_max  I(0, |x|) / I(0, x_max),  I(a, b) = int_a^b p^(1/3).
///
/// For the Laplacian this reduces to
/// x_max (1 - exp(-sqrt2 |x| / 3)) / (1 - exp(-sqrt2 x_max / 3)).
class OptimalCompressor {
 public:
  OptimalCompressor(std::shared_ptr<const Source> source, double x_max);

  double x_max() const noexcept { return x_max_; }
  double normalizer() const noexcept { return normalizer_; }
  const Source& source() const noexcept { return *source_; }

  /// Requires |x| <= x_max.
  double compress(double x) const;
  /// Requires |y| <= x_max; the unique x with compress(x) == y.
  double decompress(double y) const;
  /// c'(x) = x_max p(x)^(1/3) / I(0, x_max).
  double derivative(double x) const;

 private:
  std::shared_ptr<const Source> source_;
  double x_max_;
  double normalizer_;
};

/// High-rate benchmark for the optimal compandor with n_levels levels:
/// D_g = 2 I(0, x_max)^3 / (3 (n_levels - 2)^2), D_o from the centroid
/// overload cell. The (n_levels - 2) step count matches the uniform step
/// 2 x_max / (N - 2) used by the spline designs.
DistortionReport optimal_compandor_report(const Source& source, int n_levels, double x_max);

}  // namespace compandor
