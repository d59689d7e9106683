#pragma once

namespace compandor {

/// Granular/overload split of the mean-squared error and the resulting SQNR.
struct DistortionReport {
  double granular = 0.0;
  double overload = 0.0;
  double total = 0.0;
  double sqnr_db = 0.0;
};

/// total = granular + overload; sqnr_db = 10 log10(variance / total).
DistortionReport make_report(double granular, double overload, double variance);

}  // namespace compandor
