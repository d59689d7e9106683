#include "compandor/design_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "compandor/error.hpp"

namespace compandor {

namespace {

using nlohmann::json;

template <typename T>
std::string json_array(std::span<const T> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>)
      out += format_real(xs[i]);
    else
      out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string report_fields(const DistortionReport& r, const std::string& indent) {
  std::ostringstream os;
  os << indent << "\"granular\": " << format_real(r.granular) << ",\n"
     << indent << "\"overload\": " << format_real(r.overload) << ",\n"
     << indent << "\"total\": " << format_real(r.total) << ",\n"
     << indent << "\"sqnr_db\": " << format_real(r.sqnr_db) << "\n";
  return os.str();
}

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(Errc::parse_error, std::string("design file: missing key '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("design file: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_real(double value) {
  if (!std::isfinite(value)) fail(Errc::invalid_argument, "cannot serialize a non-finite real");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string design_to_json(const QuantizerDesign& d) {
  const auto& s = d.spline();
  std::ostringstream os;
  os << "{\n"
     << "  \"schema_version\": " << kDesignSchemaVersion << ",\n"
     << "  \"n_levels\": " << d.n_levels() << ",\n"
     << "  \"segments_per_quadrant\": " << d.segments_per_quadrant() << ",\n"
     << "  \"x_max\": " << format_real(d.x_max()) << ",\n"
     << "  \"x_max_design\": " << format_real(d.x_max_design()) << ",\n"
     << "  \"step\": " << format_real(d.step()) << ",\n"
     << "  \"segment_thresholds\": " << json_array(d.segment_thresholds()) << ",\n"
     << "  \"cell_widths\": " << json_array(d.cell_widths()) << ",\n"
     << "  \"allocation\": " << json_array(d.allocation()) << ",\n"
     << "  \"overload_level\": " << format_real(d.overload_level()) << ",\n"
     << "  \"spline\": {\n"
     << "    \"knots\": " << json_array(s.knots()) << ",\n"
     << "    \"values\": " << json_array(s.values()) << ",\n"
     << "    \"slopes\": " << json_array(s.slopes()) << "\n"
     << "  }\n"
     << "}\n";
  return os.str();
}

QuantizerDesign design_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, std::string("design file: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, "design file: top level must be an object");
  const int version = field<int>(doc, "schema_version");
  if (version != kDesignSchemaVersion)
    fail(Errc::parse_error, "design file: unsupported schema_version " + std::to_string(version));

  QuantizerDesign::Parts p;
  p.n_levels = field<int>(doc, "n_levels");
  p.segments_per_quadrant = field<int>(doc, "segments_per_quadrant");
  p.x_max = field<double>(doc, "x_max");
  p.x_max_design = field<double>(doc, "x_max_design");
  p.step = field<double>(doc, "step");
  p.segment_thresholds = field<std::vector<double>>(doc, "segment_thresholds");
  p.cell_widths = field<std::vector<double>>(doc, "cell_widths");
  p.allocation = field<std::vector<int>>(doc, "allocation");
  p.overload_level = field<double>(doc, "overload_level");
  const auto spline = field<json>(doc, "spline");
  if (!spline.is_object()) fail(Errc::parse_error, "design file: 'spline' must be an object");
  p.spline_knots = field<std::vector<double>>(spline, "knots");
  p.spline_values = field<std::vector<double>>(spline, "values");
  const auto slopes = field<std::vector<double>>(spline, "slopes");

  auto design = QuantizerDesign::from_parts(std::move(p));
  const auto derived = design.spline().slopes();
  if (slopes.size() != derived.size())
    fail(Errc::parse_error, "design file: spline slopes have the wrong length");
  for (std::size_t i = 0; i < slopes.size(); ++i)
    if (!(std::abs(slopes[i] - derived[i]) <= 1e-12 * std::abs(derived[i])))
      fail(Errc::parse_error, "design file: spline slopes disagree with knots and values");
  return design;
}

std::string report_to_json(const DistortionReport& report) {
  return "{\n" + report_fields(report, "  ") + "}\n";
}

std::string comparison_to_json(const Comparison& c) {
  std::ostringstream os;
  os << "{\n"
     << "  \"n_levels\": " << c.n_levels << ",\n"
     << "  \"segments\": " << 2 * c.segments_per_quadrant << ",\n"
     << "  \"x_max_fixed\": " << format_real(c.x_max_fixed) << ",\n"
     << "  \"x_max_optimized\": " << format_real(c.x_max_optimized) << ",\n"
     << "  \"fixed\": {\n" << report_fields(c.fixed, "    ") << "  },\n"
     << "  \"optimized\": {\n" << report_fields(c.optimized, "    ") << "  },\n"
     << "  \"optimal\": {\n" << report_fields(c.optimal, "    ") << "  }\n"
     << "}\n";
  return os.str();
}

std::string sweep_to_csv(const SweepCurve& curve) {
  std::string out = "x_max,d_last\n";
  for (std::size_t k = 0; k < curve.candidates.size(); ++k)
    out += format_real(curve.candidates[k]) + "," + format_real(curve.d_last[k]) + "\n";
  return out;
}

}  // namespace compandor
