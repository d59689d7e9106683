#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace compandor {

/// Symmetric (even) probability density of the input signal.
///
/// Only density() and variance() are required. Every other query has a
/// generic implementation based on adaptive Gauss-Kronrod quadrature and
/// bisection; concrete families override them with closed forms. The generic
/// path is what the tests use as an independent oracle.
class Source {
 public:
  virtual ~Source() = default;

  virtual double variance() const noexcept = 0;
  virtual double density(double x) const = 0;

  /// P(a <= X <= b). Either bound may be infinite. Throws on a > b.
  virtual double interval_probability(double a, double b) const;

  /// E[X | X >= t] for t > 0.
  virtual double tail_centroid(double t) const;

  /// Integral of p(x)^(1/3) over [a, b], 0 <= a <= b (b may be +inf).
  virtual double cube_root_density_integral(double a, double b) const;

  /// The b >= a with cube_root_density_integral(a, b) == mass.
  virtual double cube_root_integral_upper(double a, double mass) const;

  /// 2 * integral over [t, inf) of (x - tail_centroid(t))^2 p(x): the
  /// two-sided overload distortion when the overload level is the centroid.
  virtual double overload_distortion(double t) const;

  /// Integral over [a, b] of (x - (a+b)/2)^2 p(x), 0 <= a <= b: the exact
  /// error power of a cell reproduced at its midpoint.
  virtual double centered_second_moment(double a, double b) const;

  /// Inverse CDF for u in (0, 1).
  virtual double quantile(double u) const;

  /// n draws by inverse-CDF transform of a seeded mt19937_64 stream.
  /// Deterministic in (seed, n).
  std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

  /// Fills out[0..n) with the same sequence sample(seed, n) would return.
  void sample_into(std::uint64_t seed, double* out, std::size_t n) const;

 protected:
  Source() = default;
  Source(const Source&) = default;
  Source& operator=(const Source&) = default;
};

/// Two-sided exponential density p(x) = exp(-sqrt(2)|x|/sigma) / (sqrt(2) sigma).
class LaplacianSource final : public Source {
 public:
  explicit LaplacianSource(double variance = 1.0);

  double variance() const noexcept override { return variance_; }
  double sigma() const noexcept { return sigma_; }

  double density(double x) const override;
  double interval_probability(double a, double b) const override;
  double tail_centroid(double t) const override;
  double cube_root_density_integral(double a, double b) const override;
  double cube_root_integral_upper(double a, double mass) const override;
  double overload_distortion(double t) const override;
  double centered_second_moment(double a, double b) const override;
  double quantile(double u) const override;

 private:
  double variance_;
  double sigma_;
  double rate_;  // sqrt(2) / sigma
};

/// Unit-variance Laplacian, the design source.
std::shared_ptr<const Source> unit_laplacian();

namespace detail {

/// Adaptive Gauss-Kronrod quadrature of f over [a, b]; bounds may be infinite.
double integrate(const std::function<double(double)>& f, double a, double b);

/// One draw from the 52-bit uniform grid (2k + 1) / 2^53, strictly inside (0, 1).
double uniform_open(std::uint64_t bits) noexcept;

}  // namespace detail

}  // namespace compandor
