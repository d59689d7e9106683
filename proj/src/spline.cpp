#include "compandor/spline.hpp"

#include <algorithm>
#include <cmath>

#include "compandor/compressor.hpp"
#include "compandor/error.hpp"

namespace compandor {

FirstDegreeSpline FirstDegreeSpline::build(std::span<const double> knots,
                                           std::span<const double> values) {
  if (knots.size() != values.size())
    fail(Errc::invalid_argument, "spline: knots and values differ in length");
  if (knots.size() < 2) fail(Errc::invalid_argument, "spline: need at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i]) || !std::isfinite(values[i]))
      fail(Errc::invalid_argument, "spline: non-finite knot or value");
    if (i > 0 && !(knots[i] > knots[i - 1]))
      fail(Errc::invalid_argument, "spline: knots must be strictly increasing");
  }
  FirstDegreeSpline s;
  s.knots_.assign(knots.begin(), knots.end());
  s.values_.assign(values.begin(), values.end());
  s.slopes_.resize(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    s.slopes_[i] = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
  return s;
}

std::size_t FirstDegreeSpline::piece(double x) const noexcept {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto idx = static_cast<std::ptrdiff_t>(it - knots_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, slopes_.size() - 1));
}

double FirstDegreeSpline::piece_value(std::size_t i, double x) const {
  if (i >= slopes_.size()) fail(Errc::invalid_argument, "spline: piece index out of range");
  return values_[i] + slopes_[i] * (x - knots_[i]);
}

double FirstDegreeSpline::eval(double x) const noexcept {
  if (x >= knots_.back()) return values_.back() + slopes_.back() * (x - knots_.back());
  const std::size_t i = piece(x);
  return values_[i] + slopes_[i] * (x - knots_[i]);
}

double FirstDegreeSpline::eval_odd(double x) const {
  if (knots_.front() != 0.0 || values_.front() != 0.0)
    fail(Errc::invalid_argument, "spline: odd extension needs a spline through the origin");
  return std::copysign(eval(std::abs(x)), x);
}

bool FirstDegreeSpline::strictly_increasing() const noexcept {
  return std::all_of(slopes_.begin(), slopes_.end(), [](double m) { return m > 0.0; });
}

double FirstDegreeSpline::invert(double y) const {
  if (!strictly_increasing()) fail(Errc::invalid_argument, "spline: invert needs a monotone spline");
  if (!(y >= values_.front() && y <= values_.back()))
    fail(Errc::invalid_argument, "spline: invert argument outside the value range");
  if (y == values_.back()) return knots_.back();
  const auto it = std::upper_bound(values_.begin(), values_.end(), y);
  const auto i = static_cast<std::size_t>(it - values_.begin()) - 1;
  return knots_[i] + (y - values_[i]) / slopes_[i];
}

FirstDegreeSpline approximate_compressor(const OptimalCompressor& compressor,
                                         std::span<const double> knots) {
  std::vector<double> values(knots.size());
  std::transform(knots.begin(), knots.end(), values.begin(),
                 [&](double x) { return compressor.compress(x); });
  return FirstDegreeSpline::build(knots, values);
}

double max_abs_error(const FirstDegreeSpline& spline, const OptimalCompressor& compressor,
                     std::size_t grid) {
  if (grid < 2) fail(Errc::invalid_argument, "max_abs_error: grid must have >= 2 points");
  const double x_max = compressor.x_max();
  double worst = 0.0;
  for (std::size_t k = 0; k < grid; ++k) {
    const double x = k + 1 == grid ? x_max : x_max * static_cast<double>(k) / (grid - 1);
    worst = std::max(worst, std::abs(spline.eval(x) - compressor.compress(x)));
  }
  return worst;
}

}  // namespace compandor
