// Command-line front end. Talks to the library only through compandor.h.
//
// Exit codes: 0 success, 2 invalid configuration, 3 I/O or data errors.

#include <CLI11.hpp>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "compandor/compandor.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct ExitError {
  int code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& msg) { throw ExitError{kExitConfig, msg}; }
[[noreturn]] void data_error(const std::string& msg) { throw ExitError{kExitData, msg}; }

void check(cmpd_status st) {
  if (st == CMPD_OK) return;
  const std::string msg = cmpd_last_error();
  if (st == CMPD_ERR_INVALID_CONFIG || st == CMPD_ERR_INVALID_ARGUMENT) config_error(msg);
  data_error(msg);
}

struct DesignDeleter {
  void operator()(cmpd_design* d) const { cmpd_design_destroy(d); }
};
using DesignPtr = std::unique_ptr<cmpd_design, DesignDeleter>;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}
std::string db(double v) { return fmt("%.2f", v); }
std::string sci(double v) { return fmt("%.3e", v); }
std::string real17(double v) { return fmt("%.17g", v); }

// --segments is 2L, the total over both quadrants.
int quadrant_segments(int n_levels, int segments) {
  if (segments < 2 || segments % 2 != 0)
    config_error("--segments counts both quadrants and must be even and >= 2, got " +
                 std::to_string(segments));
  if (n_levels % segments != 0)
    config_error(std::to_string(n_levels) + " is not divisible by " + std::to_string(segments));
  return segments / 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) data_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) data_error("cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) data_error("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) data_error("cannot write '" + path + "'");
}

std::string design_json(const cmpd_design* d) {
  size_t len = 0;
  check(cmpd_design_to_json(d, nullptr, 0, &len));
  std::string text(len + 1, '\0');
  check(cmpd_design_to_json(d, text.data(), text.size(), &len));
  text.resize(len);
  return text;
}

DesignPtr load_design(const std::string& path) {
  const auto text = read_file(path);
  cmpd_design* raw = nullptr;
  const auto st = cmpd_design_from_json(text.data(), text.size(), &raw);
  if (st != CMPD_OK) data_error("'" + path + "': " + cmpd_last_error());
  return DesignPtr(raw);
}

cmpd_design_info info_of(const cmpd_design* d) {
  cmpd_design_info info{};
  check(cmpd_design_info_get(d, &info));
  return info;
}

// Sample streams.

enum class Format { text, f64le };

std::vector<double> parse_samples(const std::string& bytes, Format format) {
  std::vector<double> xs;
  if (format == Format::f64le) {
    if (bytes.size() % 8 != 0)
      data_error("f64le input size " + std::to_string(bytes.size()) + " is not a multiple of 8");
    xs.resize(bytes.size() / 8);
    for (size_t k = 0; k < xs.size(); ++k) {
      std::uint64_t bits = 0;
      for (int b = 7; b >= 0; --b)
        bits = (bits << 8) | static_cast<unsigned char>(bytes[8 * k + b]);
      xs[k] = std::bit_cast<double>(bits);
      if (!std::isfinite(xs[k]))
        data_error("non-finite sample at byte offset " + std::to_string(8 * k));
    }
    return xs;
  }
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < bytes.size()) {
    size_t end = bytes.find('\n', pos);
    if (end == std::string::npos) end = bytes.size();
    ++line_no;
    std::string_view line(bytes.data() + pos, end - pos);
    pos = end + 1;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty()) continue;
    if (line.front() == '+') line.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size())
      data_error("malformed sample on line " + std::to_string(line_no) + ": '" +
                 std::string(line) + "'");
    if (!std::isfinite(v)) data_error("non-finite sample on line " + std::to_string(line_no));
    xs.push_back(v);
  }
  return xs;
}

std::string format_samples(const std::vector<double>& xs, Format format) {
  std::string out;
  if (format == Format::f64le) {
    out.resize(8 * xs.size());
    for (size_t k = 0; k < xs.size(); ++k) {
      auto bits = std::bit_cast<std::uint64_t>(xs[k]);
      for (int b = 0; b < 8; ++b, bits >>= 8) out[8 * k + b] = static_cast<char>(bits & 0xff);
    }
    return out;
  }
  for (const double x : xs) out += real17(x) + "\n";
  return out;
}

// Subcommands.

struct DesignArgs {
  int n = 128;
  int segments = 8;
  double x_max = 0.0;
  std::string out;
};

int run_design(const DesignArgs& a) {
  const int l = quadrant_segments(a.n, a.segments);
  cmpd_design* raw = nullptr;
  check(cmpd_design_create(a.n, l, a.x_max, &raw));
  DesignPtr d(raw);
  cmpd_report r{};
  check(cmpd_design_evaluate(d.get(), &r));
  if (!a.out.empty()) write_file(a.out, design_json(d.get()));
  const auto info = info_of(d.get());
  std::cout << "N = " << info.n_levels << ", 2L = " << 2 * info.segments_per_quadrant
            << ", x_max = " << fmt("%.4f", info.x_max) << ", SQNR = " << db(r.sqnr_db) << " dB\n";
  return 0;
}

struct OptimizeArgs {
  int n = 128;
  int segments = 8;
  std::string out;
};

int run_optimize(const OptimizeArgs& a) {
  const int l = quadrant_segments(a.n, a.segments);
  cmpd_optimum opt{};
  check(cmpd_optimize_support(a.n, l, &opt));
  std::cout << "x_opt = " << db(opt.x_opt) << "\n"
            << "d_min = " << sci(opt.d_min) << "\n"
            << "x_frozen = " << fmt("%.4f", opt.x_frozen) << ", last segment cells = "
            << opt.last_cells << "\n";
  if (!a.out.empty()) {
    cmpd_design* raw = nullptr;
    check(cmpd_design_create(a.n, l, opt.x_opt, &raw));
    DesignPtr d(raw);
    write_file(a.out, design_json(d.get()));
  }
  return 0;
}

struct SweepArgs {
  int n = 128;
  int segments = 8;
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.01;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  const int l = quadrant_segments(a.n, a.segments);
  size_t count = 0;
  check(cmpd_sweep(a.n, l, a.lo, a.hi, a.step, nullptr, nullptr, 0, &count));
  std::vector<double> xs(count), ds(count);
  check(cmpd_sweep(a.n, l, a.lo, a.hi, a.step, xs.data(), ds.data(), count, &count));
  std::string csv = "x_max,d_last\n";
  size_t best = 0;
  for (size_t k = 0; k < count; ++k) {
    csv += real17(xs[k]) + "," + real17(ds[k]) + "\n";
    if (ds[k] < ds[best]) best = k;
  }
  if (a.out.empty())
    std::cout << csv;
  else
    write_file(a.out, csv);
  std::cerr << count << " candidates, minimum D_L = " << sci(ds[best]) << " at x_max = "
            << db(xs[best]) << "\n";
  return 0;
}

struct CompareArgs {
  int n = 128;
  int segments = 8;
  bool json = false;
};

int run_compare(const CompareArgs& a) {
  const int l = quadrant_segments(a.n, a.segments);
  if (a.json) {
    size_t len = 0;
    check(cmpd_compare_json(a.n, l, nullptr, 0, &len));
    std::string text(len + 1, '\0');
    check(cmpd_compare_json(a.n, l, text.data(), text.size(), &len));
    text.resize(len);
    std::cout << text;
    return 0;
  }
  cmpd_comparison c{};
  check(cmpd_compare(a.n, l, &c));
  auto row = [](const char* name, double x_max, const cmpd_report& r) {
    std::printf("%-10s %-8s %-11s %-11s %-11s %s\n", name, fmt("%.4f", x_max).c_str(),
                sci(r.granular).c_str(), sci(r.overload).c_str(), sci(r.total).c_str(),
                db(r.sqnr_db).c_str());
  };
  std::printf("N = %d, 2L = %d\n", a.n, a.segments);
  std::printf("%-10s %-8s %-11s %-11s %-11s %s\n", "design", "x_max", "D_g", "D_o", "D",
              "SQNR [dB]");
  row("fixed", c.x_max_fixed, c.fixed);
  row("optimized", c.x_max_optimized, c.optimized);
  row("optimal", c.x_max_fixed, c.optimal);
  std::fflush(stdout);
  return 0;
}

struct EvaluateArgs {
  std::string design;
  std::uint64_t mc = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

int run_evaluate(const EvaluateArgs& a) {
  auto d = load_design(a.design);
  cmpd_report model{}, exact{};
  check(cmpd_design_evaluate(d.get(), &model));
  check(cmpd_design_evaluate_exact(d.get(), &exact));
  std::cout << "high-rate model: D_g = " << sci(model.granular) << ", D_o = " << sci(model.overload)
            << ", D = " << sci(model.total) << ", SQNR = " << db(model.sqnr_db) << " dB\n"
            << "exact moments:   D_g = " << sci(exact.granular) << ", D_o = " << sci(exact.overload)
            << ", D = " << sci(exact.total) << ", SQNR = " << db(exact.sqnr_db) << " dB\n";
  if (a.mc > 0) {
    double mse = 0.0, se = 0.0;
    check(cmpd_design_monte_carlo(d.get(), a.mc, a.seed, a.workers, &mse, &se));
    std::cout << "monte carlo:     MSE = " << sci(mse) << " +/- " << sci(se) << " (n = " << a.mc
              << ", seed = " << a.seed << ", workers = " << a.workers
              << "), SQNR = " << db(-10.0 * std::log10(mse)) << " dB\n";
  }
  return 0;
}

struct QuantizeArgs {
  std::string design;
  std::string in;
  std::string indices;
  std::string out;
  Format format = Format::text;
};

int run_quantize(const QuantizeArgs& a) {
  auto d = load_design(a.design);
  const auto info = info_of(d.get());
  if (info.n_levels > 256)
    config_error("index files hold one byte per sample; N = " + std::to_string(info.n_levels) +
                 " exceeds 256");
  const auto xs = parse_samples(read_file(a.in), a.format);
  if (xs.empty()) data_error("input holds no samples");

  std::vector<std::uint32_t> idx(xs.size());
  check(cmpd_design_encode(d.get(), xs.data(), xs.size(), idx.data()));
  std::vector<double> rec(xs.size());
  check(cmpd_design_decode(d.get(), idx.data(), idx.size(), rec.data()));

  double signal = 0.0, noise = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    signal += xs[k] * xs[k];
    noise += (xs[k] - rec[k]) * (xs[k] - rec[k]);
  }
  if (!a.indices.empty()) {
    std::string bytes(idx.size(), '\0');
    for (size_t k = 0; k < idx.size(); ++k) bytes[k] = static_cast<char>(idx[k]);
    write_file(a.indices, bytes);
  }
  if (!a.out.empty()) write_file(a.out, format_samples(rec, a.format));

  std::cout << xs.size() << " samples, empirical SQNR = ";
  if (noise > 0.0)
    std::cout << db(10.0 * std::log10(signal / noise)) << " dB\n";
  else
    std::cout << "inf dB\n";
  return 0;
}

struct DequantizeArgs {
  std::string design;
  std::string indices;
  std::string out;
  Format format = Format::text;
};

int run_dequantize(const DequantizeArgs& a) {
  auto d = load_design(a.design);
  const auto bytes = read_file(a.indices);
  std::vector<std::uint32_t> idx(bytes.size());
  for (size_t k = 0; k < bytes.size(); ++k) idx[k] = static_cast<unsigned char>(bytes[k]);
  std::vector<double> rec(idx.size());
  const auto st = cmpd_design_decode(d.get(), idx.data(), idx.size(), rec.data());
  if (st != CMPD_OK) data_error(cmpd_last_error());
  const auto text = format_samples(rec, a.format);
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return 0;
}

struct SampleArgs {
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  double variance = 1.0;
  std::string out;
  Format format = Format::f64le;
};

int run_sample(const SampleArgs& a) {
  std::vector<double> xs(a.n);
  check(cmpd_sample_laplacian(a.variance, a.seed, xs.size(), xs.data()));
  write_file(a.out, format_samples(xs, a.format));
  return 0;
}

const std::map<std::string, Format> kFormats{{"text", Format::text}, {"f64le", Format::f64le}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Companding quantizer design with first-degree spline compressors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cmpd_version()));

  const char* segments_help = "total number of segments 2L over both quadrants (even)";

  DesignArgs design;
  auto* cmd_design = app.add_subcommand("design", "build a quantizer design and write it as JSON");
  cmd_design->add_option("--n", design.n, "number of levels N")->required();
  cmd_design->add_option("--segments", design.segments, segments_help)->required();
  cmd_design->add_option("--x-max", design.x_max,
                         "support threshold; inner thresholds stay at the default design");
  cmd_design->add_option("--out", design.out, "design file to write");

  OptimizeArgs optimize;
  auto* cmd_opt = app.add_subcommand("optimize", "minimize last-segment distortion over x_max");
  cmd_opt->add_option("--n", optimize.n, "number of levels N")->required();
  cmd_opt->add_option("--segments", optimize.segments, segments_help)->required();
  cmd_opt->add_option("--out", optimize.out, "write the optimized design here");

  SweepArgs sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "tabulate D_L over a grid of x_max as CSV");
  cmd_sweep->add_option("--n", sw.n, "number of levels N")->required();
  cmd_sweep->add_option("--segments", sw.segments, segments_help)->required();
  cmd_sweep->add_option("--lo", sw.lo, "first candidate")->required();
  cmd_sweep->add_option("--hi", sw.hi, "last candidate")->required();
  cmd_sweep->add_option("--step", sw.step, "grid step")->capture_default_str();
  cmd_sweep->add_option("--out", sw.out, "CSV file (stdout if omitted)");

  CompareArgs cmp;
  auto* cmd_cmp = app.add_subcommand("compare", "SQNR of fixed, optimized and optimal compandors");
  cmd_cmp->add_option("--n", cmp.n, "number of levels N")->required();
  cmd_cmp->add_option("--segments", cmp.segments, segments_help)->required();
  cmd_cmp->add_flag("--json", cmp.json, "emit JSON");

  EvaluateArgs ev;
  auto* cmd_ev = app.add_subcommand("evaluate", "distortion report for a design file");
  cmd_ev->add_option("--design", ev.design, "design file")->required();
  cmd_ev->add_option("--mc", ev.mc, "Monte Carlo sample count (0 = skip)");
  cmd_ev->add_option("--seed", ev.seed, "Monte Carlo seed")->capture_default_str();
  cmd_ev->add_option("--workers", ev.workers, "Monte Carlo worker threads")->capture_default_str();

  QuantizeArgs q;
  auto* cmd_q = app.add_subcommand("quantize", "encode and reconstruct a sample stream");
  cmd_q->add_option("--design", q.design, "design file")->required();
  cmd_q->add_option("--in", q.in, "input samples")->required();
  cmd_q->add_option("--indices", q.indices, "index file to write (one byte per sample)");
  cmd_q->add_option("--out", q.out, "reconstructed samples to write");
  cmd_q->add_option("--format", q.format, "sample format: text or f64le")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->capture_default_str();

  DequantizeArgs dq;
  auto* cmd_dq = app.add_subcommand("dequantize", "reconstruct samples from an index file");
  cmd_dq->add_option("--design", dq.design, "design file")->required();
  cmd_dq->add_option("--indices", dq.indices, "index file")->required();
  cmd_dq->add_option("--out", dq.out, "reconstructed samples (stdout if omitted)");
  cmd_dq->add_option("--format", dq.format, "sample format: text or f64le")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  SampleArgs sa;
  auto* cmd_sa = app.add_subcommand("sample", "draw seeded Laplacian samples");
  cmd_sa->add_option("--n", sa.n, "sample count")->required();
  cmd_sa->add_option("--seed", sa.seed, "seed")->capture_default_str();
  cmd_sa->add_option("--variance", sa.variance, "source variance")->capture_default_str();
  cmd_sa->add_option("--out", sa.out, "output file")->required();
  cmd_sa->add_option("--format", sa.format, "sample format: text or f64le")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*cmd_design) return run_design(design);
    if (*cmd_opt) return run_optimize(optimize);
    if (*cmd_sweep) return run_sweep(sw);
    if (*cmd_cmp) return run_compare(cmp);
    if (*cmd_ev) return run_evaluate(ev);
    if (*cmd_q) return run_quantize(q);
    if (*cmd_dq) return run_dequantize(dq);
    if (*cmd_sa) return run_sample(sa);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return kExitConfig;
}
