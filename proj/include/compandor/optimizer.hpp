#pragma once

#include <functional>
#include <vector>

#include "compandor/source.hpp"

namespace compandor {

/// Granular + overload distortion of the last segment when the support ends
/// at x_candidate and the last segment [x_frozen, x_candidate] holds
/// last_cells uniform cells:
///
///   D_L = 2 ((x_c - x_f) / n)^2 / 12 * P(x_f, x_c) + D_o(x_c).
double last_segment_distortion(double x_candidate, double x_frozen, int last_cells,
                               const Source& source);

struct SupportOptimum {
  double x_opt = 0.0;
  double d_min = 0.0;
  double x_frozen = 0.0;  // x_{L-1} of the default-threshold design
  int last_cells = 0;
  double x_max_design = 0.0;
};

/// Minimizes D_L over the support threshold with x_{L-1} frozen at its
/// default-design value: a 0.01 grid scan up to twice the default threshold,
/// then golden-section refinement to 1e-6 around the best grid point.
SupportOptimum optimize_support(int n_levels, int segments_per_quadrant,
                                std::shared_ptr<const Source> source);

struct SweepCurve {
  std::vector<double> candidates;
  std::vector<double> d_last;
  std::size_t argmin = 0;

  double argmin_x() const { return candidates.at(argmin); }
};

/// D_L on the grid lo + k step, k = 0 .. floor((hi - lo) / step).
SweepCurve sweep(int n_levels, int segments_per_quadrant, double lo, double hi, double step,
                 std::shared_ptr<const Source> source);

/// Golden-section search for a minimum of a unimodal f on [a, b], stopping
/// once the bracket is narrower than tol.
double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol);

}  // namespace compandor
