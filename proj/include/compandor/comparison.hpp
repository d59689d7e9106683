#pragma once

#include <memory>

#include "compandor/report.hpp"
#include "compandor/source.hpp"

namespace compandor {

/// SQNR of the default-threshold design, the optimized-threshold design, and
/// the optimal-compandor benchmark for one (N, L).
struct Comparison {
  int n_levels = 0;
  int segments_per_quadrant = 0;
  double x_max_fixed = 0.0;
  double x_max_optimized = 0.0;
  DistortionReport fixed;
  DistortionReport optimized;
  DistortionReport optimal;
};

Comparison compare(int n_levels, int segments_per_quadrant, std::shared_ptr<const Source> source);

}  // namespace compandor
