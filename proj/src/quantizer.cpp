#include "compandor/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "compandor/error.hpp"

namespace compandor {

int LevelAllocation::total() const noexcept {
  return std::accumulate(per_segment.begin(), per_segment.end(), 0);
}

double default_support_threshold(int n_levels, const Source& source) {
  if (n_levels < 2) fail(Errc::invalid_configuration, "support threshold: n_levels must be >= 2");
  return 3.0 / std::sqrt(2.0) * std::sqrt(source.variance()) * std::log((n_levels + 1) / 3.0);
}

LevelAllocation allocate_levels(int n_levels, int segments_per_quadrant) {
  const int n = n_levels;
  const int l = segments_per_quadrant;
  if (l < 1) fail(Errc::invalid_configuration, "at least one segment per quadrant is required");
  if (n < 4 || n % 2 != 0)
    fail(Errc::invalid_configuration, "n_levels must be even and >= 4, got " + std::to_string(n));
  if (n % (2 * l) != 0)
    fail(Errc::invalid_configuration, std::to_string(n) + " levels are not divisible by " +
                                          std::to_string(2 * l) + " segments");
  const int per = n / (2 * l);
  const int last = (n - 2) / 2 - (l - 1) * per;
  if (last < 1)
    fail(Errc::invalid_configuration,
         "last segment would hold no cells (need n_levels / segments >= 2)");
  LevelAllocation alloc;
  alloc.per_segment.assign(l, per);
  alloc.per_segment.back() = last;
  return alloc;
}

std::vector<double> segment_thresholds(int n_levels, int segments_per_quadrant,
                                       const OptimalCompressor& compressor) {
  const auto alloc = allocate_levels(n_levels, segments_per_quadrant);
  const int per = alloc.per_segment.front();
  const double step = 2.0 * compressor.x_max() / (n_levels - 2);
  std::vector<double> th(segments_per_quadrant + 1);
  th.front() = 0.0;
  for (int i = 1; i < segments_per_quadrant; ++i)
    th[i] = compressor.decompress(static_cast<double>(i * per) * step);
  th.back() = compressor.x_max();
  return th;
}

QuantizerDesign::QuantizerDesign(int n_levels, double x_max_design, double step,
                                 std::vector<double> thresholds, std::vector<double> widths,
                                 std::vector<int> allocation, double overload_level,
                                 FirstDegreeSpline spline)
    : n_levels_(n_levels),
      x_max_design_(x_max_design),
      step_(step),
      thresholds_(std::move(thresholds)),
      widths_(std::move(widths)),
      allocation_(std::move(allocation)),
      overload_level_(overload_level),
      spline_(std::move(spline)) {
  first_cell_.resize(allocation_.size());
  std::exclusive_scan(allocation_.begin(), allocation_.end(), first_cell_.begin(), 0);
}

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::parse_error, "invalid design: " + what); }

}  // namespace

QuantizerDesign QuantizerDesign::from_parts(Parts p) {
  LevelAllocation expected;
  try {
    expected = allocate_levels(p.n_levels, p.segments_per_quadrant);
  } catch (const Error& e) {
    bad(e.what());
  }
  if (p.allocation != expected.per_segment) bad("allocation does not match (N, L)");

  const auto l = static_cast<std::size_t>(p.segments_per_quadrant);
  if (p.segment_thresholds.size() != l + 1) bad("segment_thresholds must have L + 1 entries");
  if (p.cell_widths.size() != l) bad("cell_widths must have L entries");
  if (p.segment_thresholds.front() != 0.0) bad("segment_thresholds must start at 0");
  for (std::size_t i = 1; i <= l; ++i)
    if (!(p.segment_thresholds[i] > p.segment_thresholds[i - 1]) ||
        !std::isfinite(p.segment_thresholds[i]))
      bad("segment_thresholds must be finite and strictly increasing");
  if (p.x_max != p.segment_thresholds.back()) bad("x_max must equal the last threshold");
  if (!(p.x_max_design > 0.0) || !std::isfinite(p.x_max_design)) bad("x_max_design must be > 0");
  const double step = 2.0 * p.x_max_design / (p.n_levels - 2);
  if (!(std::abs(p.step - step) <= 1e-12 * step)) bad("step must be 2 x_max_design / (N - 2)");

  if (p.spline_knots != p.segment_thresholds) bad("spline knots must equal segment_thresholds");
  if (p.spline_values.size() != l + 1) bad("spline values must have L + 1 entries");
  if (p.spline_values.front() != 0.0) bad("spline must pass through the origin");
  FirstDegreeSpline spline = [&] {
    try {
      return FirstDegreeSpline::build(p.spline_knots, p.spline_values);
    } catch (const Error& e) {
      bad(e.what());
    }
  }();
  if (!spline.strictly_increasing()) bad("spline must be strictly increasing");

  for (std::size_t i = 0; i < l; ++i) {
    const double w = p.cell_widths[i];
    if (!(w > 0.0) || !std::isfinite(w)) bad("cell widths must be positive");
    if (!(std::abs(w - p.step / spline.slopes()[i]) <= 1e-9 * w))
      bad("cell width " + std::to_string(i) + " is not step / slope");
    const double len = p.segment_thresholds[i + 1] - p.segment_thresholds[i];
    if (!(std::abs(p.allocation[i] * w - len) <= 1e-9))
      bad("cells of segment " + std::to_string(i) + " do not tile it");
  }
  if (!(p.overload_level > p.x_max) || !std::isfinite(p.overload_level))
    bad("overload_level must exceed x_max");

  return QuantizerDesign(p.n_levels, p.x_max_design, p.step, std::move(p.segment_thresholds),
                         std::move(p.cell_widths), std::move(p.allocation), p.overload_level,
                         std::move(spline));
}

double QuantizerDesign::cell_lower(int segment, int cell) const {
  if (segment < 0 || segment >= segments_per_quadrant() || cell < 0 ||
      cell >= allocation_[segment])
    fail(Errc::invalid_argument, "cell index out of range");
  return thresholds_[segment] + cell * widths_[segment];
}

double QuantizerDesign::cell_upper(int segment, int cell) const {
  if (segment < 0 || segment >= segments_per_quadrant() || cell < 0 ||
      cell >= allocation_[segment])
    fail(Errc::invalid_argument, "cell index out of range");
  if (cell + 1 == allocation_[segment]) return thresholds_[segment + 1];
  return thresholds_[segment] + (cell + 1) * widths_[segment];
}

double QuantizerDesign::cell_midpoint(int segment, int cell) const {
  return cell_lower(segment, cell) + 0.5 * widths_[segment];
}

int QuantizerDesign::positive_index(int segment, int cell) const {
  cell_lower(segment, cell);  // range check
  return n_levels_ / 2 + first_cell_[segment] + cell;
}

int QuantizerDesign::encode(double x) const {
  if (!std::isfinite(x)) fail(Errc::invalid_argument, "encode: non-finite sample");
  const double mag = std::abs(x);
  int rank = granular_cells_per_quadrant();  // overload
  if (mag < x_max()) {
    const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), mag);
    const int seg = std::clamp(static_cast<int>(it - thresholds_.begin()) - 1, 0,
                               segments_per_quadrant() - 1);
    const int count = allocation_[seg];
    int cell = static_cast<int>(std::floor((mag - thresholds_[seg]) / widths_[seg]));
    cell = std::clamp(cell, 0, count - 1);
    // Snap to the edges decode() and cell_lower() use.
    if (cell + 1 < count && mag >= thresholds_[seg] + (cell + 1) * widths_[seg]) ++cell;
    if (cell > 0 && mag < thresholds_[seg] + cell * widths_[seg]) --cell;
    rank = first_cell_[seg] + cell;
  }
  return x < 0.0 ? n_levels_ / 2 - 1 - rank : n_levels_ / 2 + rank;
}

double QuantizerDesign::decode(int index) const {
  if (index < 0 || index >= n_levels_) fail(Errc::invalid_argument, "decode: index out of range");
  const bool negative = index < n_levels_ / 2;
  const int rank = negative ? n_levels_ / 2 - 1 - index : index - n_levels_ / 2;
  double mag;
  if (rank == granular_cells_per_quadrant()) {
    mag = overload_level_;
  } else {
    const auto it = std::upper_bound(first_cell_.begin(), first_cell_.end(), rank);
    const int seg = static_cast<int>(it - first_cell_.begin()) - 1;
    mag = cell_midpoint(seg, rank - first_cell_[seg]);
  }
  return negative ? -mag : mag;
}

QuantizerDesign build_design(int n_levels, int segments_per_quadrant, double x_max,
                             double x_max_design, std::shared_ptr<const Source> source) {
  if (!source) fail(Errc::invalid_argument, "build_design: null source");
  auto alloc = allocate_levels(n_levels, segments_per_quadrant);
  if (!(x_max_design > 0.0) || !std::isfinite(x_max_design))
    fail(Errc::invalid_configuration, "build_design: x_max_design must be positive");
  if (!std::isfinite(x_max)) fail(Errc::invalid_configuration, "build_design: x_max not finite");

  const OptimalCompressor compressor(source, x_max_design);
  auto th = segment_thresholds(n_levels, segments_per_quadrant, compressor);
  const double inner = th[th.size() - 2];
  if (!(x_max > inner))
    fail(Errc::invalid_configuration, "build_design: x_max = " + std::to_string(x_max) +
                                          " must exceed the last inner threshold " +
                                          std::to_string(inner));
  th.back() = x_max;

  std::vector<double> values(th.size());
  for (std::size_t i = 0; i + 1 < th.size(); ++i) values[i] = compressor.compress(th[i]);
  values.back() = x_max_design;  // c(x_max_design): top of the companded range
  auto spline = FirstDegreeSpline::build(th, values);

  const double step = 2.0 * x_max_design / (n_levels - 2);
  std::vector<double> widths(spline.slopes().size());
  std::transform(spline.slopes().begin(), spline.slopes().end(), widths.begin(),
                 [&](double m) { return step / m; });

  return QuantizerDesign::from_parts({
      .n_levels = n_levels,
      .segments_per_quadrant = segments_per_quadrant,
      .x_max = x_max,
      .x_max_design = x_max_design,
      .step = step,
      .segment_thresholds = th,
      .cell_widths = std::move(widths),
      .allocation = std::move(alloc.per_segment),
      .overload_level = source->tail_centroid(x_max),
      .spline_knots = th,
      .spline_values = std::move(values),
  });
}

QuantizerDesign build_design(int n_levels, int segments_per_quadrant,
                             std::shared_ptr<const Source> source) {
  if (!source) fail(Errc::invalid_argument, "build_design: null source");
  const double x_max = default_support_threshold(n_levels, *source);
  return build_design(n_levels, segments_per_quadrant, x_max, x_max, std::move(source));
}

}  // namespace compandor
