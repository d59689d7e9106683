#include "compandor/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "compandor/error.hpp"
#include "compandor/quantizer.hpp"

namespace compandor {

namespace {

constexpr double kCoarseStep = 0.01;
constexpr double kRefineTolerance = 1e-6;

struct FrozenSegment {
  double x_frozen;
  int last_cells;
  double x_max_design;
};

FrozenSegment frozen_segment(int n_levels, int segments_per_quadrant,
                             const std::shared_ptr<const Source>& source) {
  const auto design = build_design(n_levels, segments_per_quadrant, source);
  const auto th = design.segment_thresholds();
  return {th[th.size() - 2], design.allocation().back(), design.x_max()};
}

std::size_t grid_size(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9)) + 1;
}

}  // namespace

double last_segment_distortion(double x_candidate, double x_frozen, int last_cells,
                               const Source& source) {
  if (last_cells < 1) fail(Errc::invalid_argument, "last_segment_distortion: last_cells < 1");
  if (!(x_frozen >= 0.0)) fail(Errc::invalid_argument, "last_segment_distortion: x_frozen < 0");
  if (!(x_candidate > x_frozen))
    fail(Errc::invalid_argument, "last_segment_distortion: candidate must exceed x_frozen");
  const double w = (x_candidate - x_frozen) / last_cells;
  return 2.0 * w * w / 12.0 * source.interval_probability(x_frozen, x_candidate) +
         source.overload_distortion(x_candidate);
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  if (!(a <= b) || !(tol > 0.0)) fail(Errc::invalid_argument, "golden_section_minimize: bad bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

SupportOptimum optimize_support(int n_levels, int segments_per_quadrant,
                                std::shared_ptr<const Source> source) {
  const auto frozen = frozen_segment(n_levels, segments_per_quadrant, source);
  auto objective = [&](double x) {
    return last_segment_distortion(x, frozen.x_frozen, frozen.last_cells, *source);
  };

  const double lo = frozen.x_frozen +
                    10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, frozen.x_frozen);
  const double hi = 2.0 * frozen.x_max_design;
  const std::size_t count = grid_size(lo, hi, kCoarseStep);
  double best_x = lo;
  double best_d = objective(lo);
  for (std::size_t k = 1; k < count; ++k) {
    const double x = lo + static_cast<double>(k) * kCoarseStep;
    const double d = objective(x);
    if (d < best_d) {
      best_d = d;
      best_x = x;
    }
  }

  const double a = std::max(lo, best_x - kCoarseStep);
  const double b = std::min(hi, best_x + kCoarseStep);
  const double refined = golden_section_minimize(objective, a, b, kRefineTolerance);
  const double refined_d = objective(refined);

  SupportOptimum out;
  out.x_frozen = frozen.x_frozen;
  out.last_cells = frozen.last_cells;
  out.x_max_design = frozen.x_max_design;
  if (refined_d <= best_d) {
    out.x_opt = refined;
    out.d_min = refined_d;
  } else {
    out.x_opt = best_x;
    out.d_min = best_d;
  }
  return out;
}

SweepCurve sweep(int n_levels, int segments_per_quadrant, double lo, double hi, double step,
                 std::shared_ptr<const Source> source) {
  if (!(step > 0.0) || !std::isfinite(step)) fail(Errc::invalid_configuration, "sweep: step must be > 0");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(Errc::invalid_configuration, "sweep: empty grid (hi must exceed lo)");
  const auto frozen = frozen_segment(n_levels, segments_per_quadrant, source);
  if (!(lo > frozen.x_frozen))
    fail(Errc::invalid_configuration,
         "sweep: lo must exceed the frozen threshold " + std::to_string(frozen.x_frozen));

  SweepCurve curve;
  const std::size_t count = grid_size(lo, hi, step);
  curve.candidates.resize(count);
  curve.d_last.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    curve.candidates[k] = x;
    curve.d_last[k] = last_segment_distortion(x, frozen.x_frozen, frozen.last_cells, *source);
  }
  curve.argmin = static_cast<std::size_t>(
      std::min_element(curve.d_last.begin(), curve.d_last.end()) - curve.d_last.begin());
  return curve;
}

}  // namespace compandor
