#include "compandor/compressor.hpp"

#include <cmath>

#include "compandor/error.hpp"

namespace compandor {

DistortionReport make_report(double granular, double overload, double variance) {
  DistortionReport r;
  r.granular = granular;
  r.overload = overload;
  r.total = granular + overload;
  r.sqnr_db = 10.0 * std::log10(variance / r.total);
  return r;
}

OptimalCompressor::OptimalCompressor(std::shared_ptr<const Source> source, double x_max)
    : source_(std::move(source)), x_max_(x_max) {
  if (!source_) fail(Errc::invalid_argument, "OptimalCompressor: null source");
  if (!(x_max > 0.0) || !std::isfinite(x_max))
    fail(Errc::invalid_argument, "OptimalCompressor: x_max must be positive and finite");
  normalizer_ = source_->cube_root_density_integral(0.0, x_max_);
}

double OptimalCompressor::compress(double x) const {
  const double mag = std::abs(x);
  if (!(mag <= x_max_)) fail(Errc::invalid_argument, "compress: |x| exceeds x_max");
  if (mag == x_max_) return std::copysign(x_max_, x);
  const double y = x_max_ * source_->cube_root_density_integral(0.0, mag) / normalizer_;
  return std::copysign(y, x);
}

double OptimalCompressor::decompress(double y) const {
  const double mag = std::abs(y);
  if (!(mag <= x_max_)) fail(Errc::invalid_argument, "decompress: |y| exceeds x_max");
  if (mag == x_max_) return std::copysign(x_max_, y);
  const double x = source_->cube_root_integral_upper(0.0, mag / x_max_ * normalizer_);
  return std::copysign(std::min(x, x_max_), y);
}

double OptimalCompressor::derivative(double x) const {
  if (!(std::abs(x) <= x_max_)) fail(Errc::invalid_argument, "derivative: |x| exceeds x_max");
  return x_max_ * std::cbrt(source_->density(x)) / normalizer_;
}

DistortionReport optimal_compandor_report(const Source& source, int n_levels, double x_max) {
  if (n_levels < 4 || n_levels % 2 != 0)
    fail(Errc::invalid_configuration, "optimal_compandor_report: n_levels must be even and >= 4");
  if (!(x_max > 0.0)) fail(Errc::invalid_argument, "optimal_compandor_report: x_max must be > 0");
  const double integral = source.cube_root_density_integral(0.0, x_max);
  const double steps = n_levels - 2.0;
  const double granular = 2.0 * integral * integral * integral / (3.0 * steps * steps);
  return make_report(granular, source.overload_distortion(x_max), source.variance());
}

}  // namespace compandor
