#include "compandor/comparison.hpp"

#include "compandor/compressor.hpp"
#include "compandor/distortion.hpp"
#include "compandor/optimizer.hpp"
#include "compandor/quantizer.hpp"

namespace compandor {

Comparison compare(int n_levels, int segments_per_quadrant, std::shared_ptr<const Source> source) {
  const auto fixed = build_design(n_levels, segments_per_quadrant, source);
  const auto opt = optimize_support(n_levels, segments_per_quadrant, source);
  const auto optimized =
      build_design(n_levels, segments_per_quadrant, opt.x_opt, fixed.x_max(), source);

  Comparison c;
  c.n_levels = n_levels;
  c.segments_per_quadrant = segments_per_quadrant;
  c.x_max_fixed = fixed.x_max();
  c.x_max_optimized = opt.x_opt;
  c.fixed = evaluate(fixed, *source);
  c.optimized = evaluate(optimized, *source);
  c.optimal = optimal_compandor_report(*source, n_levels, fixed.x_max());
  return c;
}

}  // namespace compandor
