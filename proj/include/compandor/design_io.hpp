#pragma once

#include <string>
#include <string_view>

#include "compandor/comparison.hpp"
#include "compandor/optimizer.hpp"
#include "compandor/quantizer.hpp"
#include "compandor/report.hpp"

namespace compandor {

inline constexpr int kDesignSchemaVersion = 1;

/// Design file, schema v1. Reals are written with 17 significant digits so a
/// parse reproduces them bit for bit.
std::string design_to_json(const QuantizerDesign& design);
/// Throws Errc::parse_error on malformed or inconsistent documents.
QuantizerDesign design_from_json(std::string_view text);

std::string report_to_json(const DistortionReport& report);
std::string comparison_to_json(const Comparison& comparison);

/// `x_max,d_last` header plus one row per candidate.
std::string sweep_to_csv(const SweepCurve& curve);

/// %.17g formatting.
std::string format_real(double value);

}  // namespace compandor
