#include "compandor/source.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "compandor/error.hpp"

namespace compandor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

void require_ordered(double a, double b, const char* what) {
  if (std::isnan(a) || std::isnan(b) || a > b)
    fail(Errc::invalid_argument, std::string(what) + ": requires a <= b");
}

void require_nonnegative_interval(double a, double b, const char* what) {
  require_ordered(a, b, what);
  if (a < 0.0) fail(Errc::invalid_argument, std::string(what) + ": requires a >= 0");
}

}  // namespace

namespace detail {

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-13);
}

double uniform_open(std::uint64_t bits) noexcept {
  const std::uint64_t k = bits >> 12;
  return static_cast<double>(2 * k + 1) * 0x1.0p-53;
}

}  // namespace detail

// Generic implementations. The density may have a kink at the origin, so
// intervals straddling zero are split there.

double Source::interval_probability(double a, double b) const {
  require_ordered(a, b, "interval_probability");
  auto p = [this](double x) { return density(x); };
  if (a < 0.0 && b > 0.0) return detail::integrate(p, a, 0.0) + detail::integrate(p, 0.0, b);
  return detail::integrate(p, a, b);
}

double Source::tail_centroid(double t) const {
  if (!(t > 0.0)) fail(Errc::invalid_argument, "tail_centroid: requires t > 0");
  const double mass = detail::integrate([this](double x) { return density(x); }, t, kInf);
  const double moment = detail::integrate([this](double x) { return x * density(x); }, t, kInf);
  return moment / mass;
}

double Source::cube_root_density_integral(double a, double b) const {
  require_nonnegative_interval(a, b, "cube_root_density_integral");
  return detail::integrate([this](double x) { return std::cbrt(density(x)); }, a, b);
}

double Source::cube_root_integral_upper(double a, double mass) const {
  if (!(a >= 0.0) || !(mass >= 0.0))
    fail(Errc::invalid_argument, "cube_root_integral_upper: requires a >= 0 and mass >= 0");
  if (mass == 0.0) return a;
  if (mass >= cube_root_density_integral(a, kInf))
    fail(Errc::invalid_argument, "cube_root_integral_upper: mass exceeds the tail integral");
  double lo = a;
  double hi = a + 1.0;
  while (cube_root_density_integral(a, hi) < mass) {
    lo = hi;
    hi = a + 2.0 * (hi - a);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (cube_root_density_integral(a, mid) < mass ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double Source::overload_distortion(double t) const {
  const double centroid = tail_centroid(t);
  return 2.0 * detail::integrate(
                   [&](double x) {
                     const double e = x - centroid;
                     return e * e * density(x);
                   },
                   t, kInf);
}

double Source::centered_second_moment(double a, double b) const {
  require_nonnegative_interval(a, b, "centered_second_moment");
  const double mid = 0.5 * (a + b);
  return detail::integrate(
      [&](double x) {
        const double e = x - mid;
        return e * e * density(x);
      },
      a, b);
}

double Source::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) fail(Errc::invalid_argument, "quantile: requires 0 < u < 1");
  if (u == 0.5) return 0.0;
  // Even density: solve P(0, x) = |u - 1/2| on the positive axis.
  const double target = std::abs(u - 0.5);
  double lo = 0.0;
  double hi = 1.0;
  while (interval_probability(0.0, hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (interval_probability(0.0, mid) < target ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  return u < 0.5 ? -x : x;
}

std::vector<double> Source::sample(std::uint64_t seed, std::size_t n) const {
  std::vector<double> out(n);
  sample_into(seed, out.data(), n);
  return out;
}

void Source::sample_into(std::uint64_t seed, double* out, std::size_t n) const {
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < n; ++i) out[i] = quantile(detail::uniform_open(engine()));
}

// Laplacian closed forms, with rate k = sqrt2 / sigma so p(x) = (k/2) e^{-k|x|}.

LaplacianSource::LaplacianSource(double variance) : variance_(variance) {
  if (!(variance > 0.0) || !std::isfinite(variance))
    fail(Errc::invalid_argument, "LaplacianSource: variance must be positive and finite");
  sigma_ = std::sqrt(variance);
  rate_ = kSqrt2 / sigma_;
}

double LaplacianSource::density(double x) const {
  return 0.5 * rate_ * std::exp(-rate_ * std::abs(x));
}

double LaplacianSource::interval_probability(double a, double b) const {
  require_ordered(a, b, "interval_probability");
  if (a >= 0.0) {
    // 0.5 e^{-ka} (1 - e^{-k(b-a)}) keeps full relative precision on short cells.
    if (b == kInf) return 0.5 * std::exp(-rate_ * a);
    return -0.5 * std::exp(-rate_ * a) * std::expm1(-rate_ * (b - a));
  }
  if (b <= 0.0) return interval_probability(-b, -a);
  auto half = [this](double x) { return -0.5 * std::expm1(-rate_ * x); };
  return half(-a) + half(b);
}

double LaplacianSource::tail_centroid(double t) const {
  if (!(t > 0.0)) fail(Errc::invalid_argument, "tail_centroid: requires t > 0");
  return t + 1.0 / rate_;
}

double LaplacianSource::cube_root_density_integral(double a, double b) const {
  require_nonnegative_interval(a, b, "cube_root_density_integral");
  const double scale = std::cbrt(0.5 * rate_) * 3.0 / rate_;
  if (b == kInf) return scale * std::exp(-rate_ * a / 3.0);
  return -scale * std::exp(-rate_ * a / 3.0) * std::expm1(-rate_ * (b - a) / 3.0);
}

double LaplacianSource::cube_root_integral_upper(double a, double mass) const {
  if (!(a >= 0.0) || !(mass >= 0.0))
    fail(Errc::invalid_argument, "cube_root_integral_upper: requires a >= 0 and mass >= 0");
  const double tail = std::cbrt(0.5 * rate_) * 3.0 / rate_ * std::exp(-rate_ * a / 3.0);
  if (mass >= tail)
    fail(Errc::invalid_argument, "cube_root_integral_upper: mass exceeds the tail integral");
  return a - 3.0 / rate_ * std::log1p(-mass / tail);
}

double LaplacianSource::overload_distortion(double t) const {
  if (!(t > 0.0)) fail(Errc::invalid_argument, "overload_distortion: requires t > 0");
  // 2 * P(X >= t) * Var(X | X >= t) = 2 * (e^{-kt} / 2) * (1 / k^2).
  return std::exp(-rate_ * t) / (rate_ * rate_);
}

double LaplacianSource::centered_second_moment(double a, double b) const {
  require_nonnegative_interval(a, b, "centered_second_moment");
  const double mid = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double kh = rate_ * h;
  if (kh > 1.0) {
    // Wide cells: antiderivative -(1/2) e^{-kx} [(x-m)^2 + 2(x-m)/k + 2/k^2].
    auto antiderivative = [&](double x) {
      const double e = x - mid;
      return -0.5 * std::exp(-rate_ * x) *
             (e * e + 2.0 * e / rate_ + 2.0 / (rate_ * rate_));
    };
    return antiderivative(b) - antiderivative(a);
  }
  // Narrow cells: (k/2) e^{-km} int_{-h}^{h} t^2 e^{-kt} dt as an even power
  // series, free of the cancellation in the antiderivative.
  double sum = 0.0;
  double ratio = 1.0;  // (kh)^n / n!
  for (int n = 0; n < 200; n += 2) {
    const double term = 2.0 * h * h * h * ratio / (n + 3);
    sum += term;
    if (term <= 1e-18 * sum) break;
    ratio *= kh * kh / ((n + 1.0) * (n + 2.0));
  }
  return 0.5 * rate_ * std::exp(-rate_ * mid) * sum;
}

double LaplacianSource::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) fail(Errc::invalid_argument, "quantile: requires 0 < u < 1");
  const double scale = 1.0 / rate_;
  return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

std::shared_ptr<const Source> unit_laplacian() {
  static const auto source = std::make_shared<const LaplacianSource>(1.0);
  return source;
}

}  // namespace compandor
