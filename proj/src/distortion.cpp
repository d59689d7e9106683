#include "compandor/distortion.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "compandor/error.hpp"

namespace compandor {

double cell_probability(const QuantizerDesign& design, int segment, int cell,
                        const Source& source) {
  return source.interval_probability(design.cell_lower(segment, cell),
                                     design.cell_upper(segment, cell));
}

double segment_probability(const QuantizerDesign& design, int segment, const Source& source) {
  if (segment < 0 || segment >= design.segments_per_quadrant())
    fail(Errc::invalid_argument, "segment index out of range");
  const auto th = design.segment_thresholds();
  return source.interval_probability(th[segment], th[segment + 1]);
}

double granular_distortion(const QuantizerDesign& design, const Source& source) {
  double sum = 0.0;
  for (int i = 0; i < design.segments_per_quadrant(); ++i) {
    const double w = design.cell_widths()[i];
    sum += w * w / 12.0 * segment_probability(design, i, source);
  }
  return 2.0 * sum;
}

double granular_distortion_per_cell(const QuantizerDesign& design, const Source& source) {
  double sum = 0.0;
  for (int i = 0; i < design.segments_per_quadrant(); ++i) {
    const double w = design.cell_widths()[i];
    for (int j = 0; j < design.allocation()[i]; ++j)
      sum += w * w / 12.0 * cell_probability(design, i, j, source);
  }
  return 2.0 * sum;
}

double granular_distortion_exact(const QuantizerDesign& design, const Source& source) {
  double sum = 0.0;
  for (int i = 0; i < design.segments_per_quadrant(); ++i) {
    const double w = design.cell_widths()[i];
    for (int j = 0; j < design.allocation()[i]; ++j) {
      // Reproduction is the midpoint of [lo, lo + w]; the last cell's upper
      // edge is the threshold, which differs from lo + w only by rounding.
      const double lo = design.cell_lower(i, j);
      sum += source.centered_second_moment(lo, lo + w);
    }
  }
  return 2.0 * sum;
}

double overload_distortion(const QuantizerDesign& design, const Source& source) {
  const double centroid = source.tail_centroid(design.x_max());
  if (!(std::abs(design.overload_level() - centroid) <= 1e-12 * centroid))
    fail(Errc::invalid_argument, "overload level is not the tail centroid of this source");
  return source.overload_distortion(design.x_max());
}

DistortionReport evaluate(const QuantizerDesign& design, const Source& source) {
  return make_report(granular_distortion(design, source), overload_distortion(design, source),
                     source.variance());
}

DistortionReport evaluate_exact(const QuantizerDesign& design, const Source& source) {
  return make_report(granular_distortion_exact(design, source),
                     overload_distortion(design, source), source.variance());
}

std::uint64_t worker_seed(std::uint64_t seed, unsigned worker) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(worker) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

struct BlockMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean
};

BlockMoments squared_error_moments(const QuantizerDesign& design, const Source& source,
                                   std::uint64_t seed, std::uint64_t n) {
  BlockMoments out;
  if (n == 0) return out;
  const auto x = source.sample(seed, n);
  std::vector<double> e2(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = x[k] - design.decode(design.encode(x[k]));
    e2[k] = e * e;
    sum += e2[k];
  }
  out.count = n;
  out.mean = sum / static_cast<double>(n);
  for (const double v : e2) out.m2 += (v - out.mean) * (v - out.mean);
  return out;
}

}  // namespace

MonteCarloEstimate monte_carlo_mse(const QuantizerDesign& design, const Source& source,
                                   std::uint64_t n, std::uint64_t seed, unsigned workers) {
  if (n < 10000) fail(Errc::invalid_argument, "monte_carlo_mse: requires n >= 10^4");
  if (workers == 0 || workers > n) fail(Errc::invalid_argument, "monte_carlo_mse: bad worker count");

  std::vector<BlockMoments> blocks(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t len = n / workers + (w < n % workers ? 1 : 0);
    blocks[w] = squared_error_moments(design, source, worker_seed(seed, w), len);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  // Chan et al. pairwise combination, always in worker order.
  BlockMoments total;
  for (const auto& b : blocks) {
    if (b.count == 0) continue;
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(b.count);
    const double delta = b.mean - total.mean;
    const double nt = na + nb;
    total.mean += delta * nb / nt;
    total.m2 += b.m2 + delta * delta * na * nb / nt;
    total.count += b.count;
  }

  MonteCarloEstimate est;
  est.mse = total.mean;
  est.samples = total.count;
  est.workers = workers;
  const double var = total.m2 / static_cast<double>(total.count - 1);
  est.std_error = std::sqrt(var / static_cast<double>(total.count));
  return est;
}

}  // namespace compandor
