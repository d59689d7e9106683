#include "compandor/compandor.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <algorithm>
#include <string>

#include "compandor/comparison.hpp"
#include "compandor/design_io.hpp"
#include "compandor/distortion.hpp"
#include "compandor/error.hpp"
#include "compandor/optimizer.hpp"
#include "compandor/quantizer.hpp"

struct cmpd_design {
  compandor::QuantizerDesign design;
};

namespace {

using namespace compandor;

thread_local std::string g_last_error;

struct BufferTooSmall {};

cmpd_status set_error(cmpd_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body, translating exceptions to status codes.
template <typename F>
cmpd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return CMPD_OK;
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::invalid_argument: return set_error(CMPD_ERR_INVALID_ARGUMENT, e.what());
      case Errc::invalid_configuration: return set_error(CMPD_ERR_INVALID_CONFIG, e.what());
      case Errc::parse_error: return set_error(CMPD_ERR_PARSE, e.what());
    }
    return set_error(CMPD_ERR_INTERNAL, e.what());
  } catch (const BufferTooSmall&) {
    return set_error(CMPD_ERR_BUFFER_TOO_SMALL, "buffer too small");
  } catch (const std::bad_alloc&) {
    return set_error(CMPD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CMPD_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CMPD_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

template <typename T, typename U>
cmpd_status copy_out(std::span<const U> src, T* out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "count must not be null");
    *count = src.size();
    if (out == nullptr && capacity == 0) return;
    require(out != nullptr, "output buffer is null");
    if (capacity < src.size()) throw BufferTooSmall{};
    for (size_t i = 0; i < src.size(); ++i) out[i] = static_cast<T>(src[i]);
  });
}

cmpd_status copy_string(const std::string& s, char* out, size_t capacity, size_t* length) {
  if (length == nullptr) return set_error(CMPD_ERR_INVALID_ARGUMENT, "length must not be null");
  *length = s.size();
  if (out == nullptr && capacity == 0) return CMPD_OK;
  if (out == nullptr) return set_error(CMPD_ERR_INVALID_ARGUMENT, "output buffer is null");
  if (capacity < s.size() + 1) return set_error(CMPD_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return CMPD_OK;
}

cmpd_report to_c(const DistortionReport& r) { return {r.granular, r.overload, r.total, r.sqnr_db}; }

}  // namespace

extern "C" {

const char* cmpd_version(void) { return "1.0.0"; }

const char* cmpd_last_error(void) { return g_last_error.c_str(); }

const char* cmpd_status_string(cmpd_status status) {
  switch (status) {
    case CMPD_OK: return "ok";
    case CMPD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CMPD_ERR_INVALID_CONFIG: return "invalid configuration";
    case CMPD_ERR_PARSE: return "parse error";
    case CMPD_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case CMPD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

double cmpd_default_support_threshold(int n_levels) {
  if (n_levels < 2) return std::numeric_limits<double>::quiet_NaN();
  return default_support_threshold(n_levels, *unit_laplacian());
}

cmpd_status cmpd_design_create(int n_levels, int segments_per_quadrant, double x_max,
                               cmpd_design** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = nullptr;
    const auto source = unit_laplacian();
    auto design = x_max > 0.0
                      ? build_design(n_levels, segments_per_quadrant, x_max,
                                     default_support_threshold(n_levels, *source), source)
                      : build_design(n_levels, segments_per_quadrant, source);
    *out = new cmpd_design{std::move(design)};
  });
}

void cmpd_design_destroy(cmpd_design* design) { delete design; }

cmpd_status cmpd_design_info_get(const cmpd_design* design, cmpd_design_info* out) {
  return guarded([&] {
    require(design && out, "null argument");
    const auto& d = design->design;
    *out = {d.n_levels(), d.segments_per_quadrant(), d.x_max(),
            d.x_max_design(), d.step(), d.overload_level()};
  });
}

cmpd_status cmpd_design_thresholds(const cmpd_design* design, double* out, size_t capacity,
                                   size_t* count) {
  if (!design) return set_error(CMPD_ERR_INVALID_ARGUMENT, "null design");
  return copy_out(design->design.segment_thresholds(), out, capacity, count);
}

cmpd_status cmpd_design_cell_widths(const cmpd_design* design, double* out, size_t capacity,
                                    size_t* count) {
  if (!design) return set_error(CMPD_ERR_INVALID_ARGUMENT, "null design");
  return copy_out(design->design.cell_widths(), out, capacity, count);
}

cmpd_status cmpd_design_allocation(const cmpd_design* design, int* out, size_t capacity,
                                   size_t* count) {
  if (!design) return set_error(CMPD_ERR_INVALID_ARGUMENT, "null design");
  return copy_out(design->design.allocation(), out, capacity, count);
}

cmpd_status cmpd_design_slopes(const cmpd_design* design, double* out, size_t capacity,
                               size_t* count) {
  if (!design) return set_error(CMPD_ERR_INVALID_ARGUMENT, "null design");
  return copy_out(design->design.spline().slopes(), out, capacity, count);
}

cmpd_status cmpd_design_evaluate(const cmpd_design* design, cmpd_report* out) {
  return guarded([&] {
    require(design && out, "null argument");
    *out = to_c(evaluate(design->design, *unit_laplacian()));
  });
}

cmpd_status cmpd_design_evaluate_exact(const cmpd_design* design, cmpd_report* out) {
  return guarded([&] {
    require(design && out, "null argument");
    *out = to_c(evaluate_exact(design->design, *unit_laplacian()));
  });
}

cmpd_status cmpd_design_monte_carlo(const cmpd_design* design, uint64_t n, uint64_t seed,
                                    unsigned workers, double* mse, double* std_error) {
  return guarded([&] {
    require(design && mse && std_error, "null argument");
    const auto est = monte_carlo_mse(design->design, *unit_laplacian(), n, seed, workers);
    *mse = est.mse;
    *std_error = est.std_error;
  });
}

cmpd_status cmpd_design_encode(const cmpd_design* design, const double* samples, size_t n,
                               uint32_t* indices) {
  return guarded([&] {
    require(design && (n == 0 || (samples && indices)), "null argument");
    for (size_t k = 0; k < n; ++k)
      indices[k] = static_cast<uint32_t>(design->design.encode(samples[k]));
  });
}

cmpd_status cmpd_design_decode(const cmpd_design* design, const uint32_t* indices, size_t n,
                               double* samples) {
  return guarded([&] {
    require(design && (n == 0 || (samples && indices)), "null argument");
    const auto levels = static_cast<uint32_t>(design->design.n_levels());
    for (size_t k = 0; k < n; ++k) {
      if (indices[k] >= levels)
        fail(Errc::invalid_argument, "index " + std::to_string(indices[k]) + " at position " +
                                         std::to_string(k) + " is out of range");
      samples[k] = design->design.decode(static_cast<int>(indices[k]));
    }
  });
}

cmpd_status cmpd_design_to_json(const cmpd_design* design, char* out, size_t capacity,
                                size_t* length) {
  std::string text;
  const auto st = guarded([&] {
    require(design != nullptr, "null design");
    text = design_to_json(design->design);
  });
  return st == CMPD_OK ? copy_string(text, out, capacity, length) : st;
}

cmpd_status cmpd_design_from_json(const char* text, size_t length, cmpd_design** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = nullptr;
    *out = new cmpd_design{design_from_json(std::string_view(text, length))};
  });
}

cmpd_status cmpd_optimize_support(int n_levels, int segments_per_quadrant, cmpd_optimum* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto opt = optimize_support(n_levels, segments_per_quadrant, unit_laplacian());
    *out = {opt.x_opt, opt.d_min, opt.x_frozen, opt.last_cells};
  });
}

cmpd_status cmpd_sweep(int n_levels, int segments_per_quadrant, double lo, double hi, double step,
                       double* x_max, double* d_last, size_t capacity, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "count must not be null");
    const auto curve = sweep(n_levels, segments_per_quadrant, lo, hi, step, unit_laplacian());
    *count = curve.candidates.size();
    if (x_max == nullptr && d_last == nullptr && capacity == 0) return;
    require(x_max && d_last, "output buffer is null");
    if (capacity < curve.candidates.size()) throw BufferTooSmall{};
    std::copy(curve.candidates.begin(), curve.candidates.end(), x_max);
    std::copy(curve.d_last.begin(), curve.d_last.end(), d_last);
  });
}

cmpd_status cmpd_optimal_compandor_report(int n_levels, double x_max, cmpd_report* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = to_c(optimal_compandor_report(*unit_laplacian(), n_levels, x_max));
  });
}

cmpd_status cmpd_compare(int n_levels, int segments_per_quadrant, cmpd_comparison* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto c = compare(n_levels, segments_per_quadrant, unit_laplacian());
    *out = {c.x_max_fixed, c.x_max_optimized, to_c(c.fixed), to_c(c.optimized), to_c(c.optimal)};
  });
}

cmpd_status cmpd_compare_json(int n_levels, int segments_per_quadrant, char* out, size_t capacity,
                              size_t* length) {
  std::string text;
  const auto st = guarded([&] {
    text = comparison_to_json(compare(n_levels, segments_per_quadrant, unit_laplacian()));
  });
  return st == CMPD_OK ? copy_string(text, out, capacity, length) : st;
}

cmpd_status cmpd_sample_laplacian(double variance, uint64_t seed, size_t n, double* out) {
  return guarded([&] {
    require(n == 0 || out != nullptr, "null argument");
    LaplacianSource(variance).sample_into(seed, out, n);
  });
}

}  // extern "C"
