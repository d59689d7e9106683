#pragma once

#include <cstdint>

#include "compandor/quantizer.hpp"
#include "compandor/report.hpp"

namespace compandor {

/// P(X in cell j of segment i) on the positive half-axis (0-based indices).
double cell_probability(const QuantizerDesign& design, int segment, int cell, const Source& source);

/// P(x_i <= X <= x_{i+1}).
double segment_probability(const QuantizerDesign& design, int segment, const Source& source);

/// High-rate granular distortion 2 sum_i (w_i^2 / 12) P_i, using that all
/// cells within a segment share one width.
double granular_distortion(const QuantizerDesign& design, const Source& source);

/// The same sum taken cell by cell, without the per-segment reduction.
double granular_distortion_per_cell(const QuantizerDesign& design, const Source& source);

/// Exact granular error power of midpoint reproduction, with no high-rate
/// approximation. Used to measure the bias of the w^2/12 model.
double granular_distortion_exact(const QuantizerDesign& design, const Source& source);

/// Overload distortion with the centroid overload level. Throws
/// Errc::invalid_argument if the design's overload level is not the centroid
/// of the source's tail.
double overload_distortion(const QuantizerDesign& design, const Source& source);

/// High-rate granular model + centroid overload.
DistortionReport evaluate(const QuantizerDesign& design, const Source& source);

/// Exact-moment granular distortion + centroid overload.
DistortionReport evaluate_exact(const QuantizerDesign& design, const Source& source);

struct MonteCarloEstimate {
  double mse = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  unsigned workers = 1;
};

/// Mean of (x - decode(encode(x)))^2 over n draws from the source.
///
/// The n draws are split into `workers` contiguous blocks; block w draws from
/// its own stream seeded by worker_seed(seed, w) and blocks are reduced in
/// order, so the result depends only on (n, seed, workers). Requires
/// n >= 10^4.
MonteCarloEstimate monte_carlo_mse(const QuantizerDesign& design, const Source& source,
                                   std::uint64_t n, std::uint64_t seed, unsigned workers = 1);

/// splitmix64 of the master seed and worker number.
std::uint64_t worker_seed(std::uint64_t seed, unsigned worker) noexcept;

}  // namespace compandor
