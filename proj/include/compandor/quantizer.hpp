#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "compandor/compressor.hpp"
#include "compandor/source.hpp"
#include "compandor/spline.hpp"

namespace compandor {

/// Granular cells per segment in one quadrant: N/(2L) for every segment but
/// the last, which gets N/(2L) - 1 so the quadrant holds (N - 2)/2 cells.
struct LevelAllocation {
  std::vector<int> per_segment;

  int total() const noexcept;
};

/// Support threshold heuristic (3 sigma / sqrt2) ln((N + 1) / 3).
double default_support_threshold(int n_levels, const Source& source);

/// Throws Errc::invalid_configuration unless N is even, divisible by 2L, and
/// the last segment keeps at least one cell.
LevelAllocation allocate_levels(int n_levels, int segments_per_quadrant);

/// x_0 = 0, x_i = c^-1(i (N/2L) step) for 0 < i < L, x_L = c.x_max(), where
/// step = 2 x_max / (N - 2).
std::vector<double> segment_thresholds(int n_levels, int segments_per_quadrant,
                                       const OptimalCompressor& compressor);

/// Geometry of an N-level piecewise-uniform companding quantizer.
///
/// Segment i (0-based) spans [x_i, x_{i+1}] and holds allocation[i] equal
/// cells of width step / m_i, m_i being the spline slope on that segment.
/// Granular reproduction levels are cell midpoints; inputs with |x| >= x_max
/// reproduce at +/- overload_level.
///
/// Index layout: 0 and N-1 are the negative and positive overload cells;
/// [1, N/2 - 1] are negative granular cells by descending magnitude and
/// [N/2, N - 2] positive granular cells by ascending magnitude.
class QuantizerDesign {
 public:
  struct Parts {
    int n_levels = 0;
    int segments_per_quadrant = 0;
    double x_max = 0.0;
    double x_max_design = 0.0;
    double step = 0.0;
    std::vector<double> segment_thresholds;  // L + 1 entries
    std::vector<double> cell_widths;         // L entries
    std::vector<int> allocation;             // L entries
    double overload_level = 0.0;
    std::vector<double> spline_knots;
    std::vector<double> spline_values;
  };

  /// Validates every geometric invariant; throws Errc::parse_error otherwise.
  static QuantizerDesign from_parts(Parts parts);

  int n_levels() const noexcept { return n_levels_; }
  int segments_per_quadrant() const noexcept { return static_cast<int>(allocation_.size()); }
  double x_max() const noexcept { return thresholds_.back(); }
  double x_max_design() const noexcept { return x_max_design_; }
  double step() const noexcept { return step_; }
  std::span<const double> segment_thresholds() const noexcept { return thresholds_; }
  std::span<const double> cell_widths() const noexcept { return widths_; }
  std::span<const int> allocation() const noexcept { return allocation_; }
  double overload_level() const noexcept { return overload_level_; }
  const FirstDegreeSpline& spline() const noexcept { return spline_; }

  int granular_cells_per_quadrant() const noexcept { return (n_levels_ - 2) / 2; }

  /// Edges [lo, hi] of cell j in segment i on the positive half-axis. The
  /// last cell of a segment ends exactly on the segment threshold.
  double cell_lower(int segment, int cell) const;
  double cell_upper(int segment, int cell) const;
  double cell_midpoint(int segment, int cell) const;

  /// Index into [0, N-1]. Cells are half-open in magnitude, [lo, hi).
  /// Throws Errc::invalid_argument on non-finite x.
  int encode(double x) const;
  /// Reproduction level of an index; throws on out-of-range indices.
  double decode(int index) const;
  /// Index of the mirrored cell on the other side of zero.
  int mirror(int index) const noexcept { return n_levels_ - 1 - index; }

  /// Index of the positive-side cell (segment, cell).
  int positive_index(int segment, int cell) const;

 private:
  QuantizerDesign(int n_levels, double x_max_design, double step, std::vector<double> thresholds,
                  std::vector<double> widths, std::vector<int> allocation, double overload_level,
                  FirstDegreeSpline spline);

  int n_levels_;
  double x_max_design_;
  double step_;
  std::vector<double> thresholds_;
  std::vector<double> widths_;
  std::vector<int> allocation_;
  std::vector<int> first_cell_;  // magnitude rank of each segment's first cell
  double overload_level_;
  FirstDegreeSpline spline_;
};

/// Builds the quantizer for (N, L) from a compressor designed at
/// x_max_design, with the support ending at x_max.
///
/// Inner thresholds x_1..x_{L-1} and the step come from the x_max_design
/// build. When x_max != x_max_design only the last knot moves: the spline's
/// last piece then maps [x_{L-1}, x_max] onto the same companded interval
/// [c(x_{L-1}), x_max_design], so the last segment keeps its N/(2L) - 1 cells.
QuantizerDesign build_design(int n_levels, int segments_per_quadrant, double x_max,
                             double x_max_design, std::shared_ptr<const Source> source);

/// The unoptimized design: x_max = x_max_design = default_support_threshold.
QuantizerDesign build_design(int n_levels, int segments_per_quadrant,
                             std::shared_ptr<const Source> source);

}  // namespace compandor
