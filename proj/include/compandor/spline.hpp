#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace compandor {

class OptimalCompressor;

/// Continuous piecewise-linear function on knots x_0 < ... < x_L.
///
/// Piece i covers [x_i, x_{i+1}) and is anchored at its left knot, so a knot
/// evaluates to its stored value exactly. Outside [x_0, x_L] the first and
/// last pieces are extended.
class FirstDegreeSpline {
 public:
  static FirstDegreeSpline build(std::span<const double> knots, std::span<const double> values);

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> slopes() const noexcept { return slopes_; }
  std::size_t piece_count() const noexcept { return slopes_.size(); }

  /// Index of the piece containing x (half-open, clamped to [0, L-1]).
  std::size_t piece(double x) const noexcept;
  /// Piece i's linear polynomial evaluated at x, regardless of where x lies.
  double piece_value(std::size_t i, double x) const;

  double eval(double x) const noexcept;
  /// Odd extension g(-x) = -g(x); requires the spline to start at (0, 0).
  double eval_odd(double x) const;
  /// Requires strictly increasing values and values[0] <= y <= values[L].
  double invert(double y) const;

  bool strictly_increasing() const noexcept;

 private:
  FirstDegreeSpline() = default;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Interpolates the compressor at the given knots.
FirstDegreeSpline approximate_compressor(const OptimalCompressor& compressor,
                                         std::span<const double> knots);

/// max |g(x) - c(x)| over `grid` uniformly spaced points of [0, x_max].
double max_abs_error(const FirstDegreeSpline& spline, const OptimalCompressor& compressor,
                     std::size_t grid);

}  // namespace compandor
