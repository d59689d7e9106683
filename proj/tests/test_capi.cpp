#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "compandor/compandor.h"

namespace {

struct Deleter {
  void operator()(cmpd_design* d) const { cmpd_design_destroy(d); }
};
using Design = std::unique_ptr<cmpd_design, Deleter>;

Design create(int n, int l, double x_max = 0.0) {
  cmpd_design* raw = nullptr;
  EXPECT_EQ(cmpd_design_create(n, l, x_max, &raw), CMPD_OK) << cmpd_last_error();
  return Design(raw);
}

std::string to_json(const cmpd_design* d) {
  size_t len = 0;
  EXPECT_EQ(cmpd_design_to_json(d, nullptr, 0, &len), CMPD_OK);
  std::string s(len + 1, '\0');
  EXPECT_EQ(cmpd_design_to_json(d, s.data(), s.size(), &len), CMPD_OK);
  s.resize(len);
  return s;
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(cmpd_version(), "1.0.0");
  EXPECT_STREQ(cmpd_status_string(CMPD_OK), "ok");
  EXPECT_STREQ(cmpd_status_string(CMPD_ERR_INVALID_CONFIG), "invalid configuration");
}

TEST(CApi, DefaultThreshold) {
  EXPECT_NEAR(cmpd_default_support_threshold(128), 7.9787103216196352, 1e-14);
  EXPECT_TRUE(std::isnan(cmpd_default_support_threshold(1)));
}

TEST(CApi, CreateAndInspect) {
  auto d = create(128, 4);
  ASSERT_TRUE(d);
  cmpd_design_info info{};
  ASSERT_EQ(cmpd_design_info_get(d.get(), &info), CMPD_OK);
  EXPECT_EQ(info.n_levels, 128);
  EXPECT_EQ(info.segments_per_quadrant, 4);
  EXPECT_NEAR(info.x_max, 7.9787103216196352, 1e-14);
  EXPECT_EQ(info.x_max, info.x_max_design);

  size_t count = 0;
  ASSERT_EQ(cmpd_design_allocation(d.get(), nullptr, 0, &count), CMPD_OK);
  EXPECT_EQ(count, 4u);
  std::vector<int> alloc(count);
  ASSERT_EQ(cmpd_design_allocation(d.get(), alloc.data(), alloc.size(), &count), CMPD_OK);
  EXPECT_EQ(alloc, (std::vector<int>{16, 16, 16, 15}));

  std::vector<double> th(2);
  EXPECT_EQ(cmpd_design_thresholds(d.get(), th.data(), th.size(), &count), CMPD_ERR_BUFFER_TOO_SMALL);
  EXPECT_EQ(count, 5u);
  th.resize(count);
  ASSERT_EQ(cmpd_design_thresholds(d.get(), th.data(), th.size(), &count), CMPD_OK);
  EXPECT_NEAR(th[3], 2.892006297706953, 1e-12);

  std::vector<double> widths(4), slopes(4);
  ASSERT_EQ(cmpd_design_cell_widths(d.get(), widths.data(), 4, &count), CMPD_OK);
  ASSERT_EQ(cmpd_design_slopes(d.get(), slopes.data(), 4, &count), CMPD_OK);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(widths[i] * slopes[i], info.step, 1e-12);
}

TEST(CApi, ErrorsCarryCodesAndMessages) {
  cmpd_design* raw = reinterpret_cast<cmpd_design*>(0x1);
  EXPECT_EQ(cmpd_design_create(128, 5, 0.0, &raw), CMPD_ERR_INVALID_CONFIG);
  EXPECT_EQ(raw, nullptr);
  EXPECT_NE(std::string(cmpd_last_error()).find("not divisible"), std::string::npos);
  EXPECT_EQ(cmpd_design_create(128, 4, 1.0, &raw), CMPD_ERR_INVALID_CONFIG);
  EXPECT_EQ(cmpd_design_create(128, 4, 0.0, nullptr), CMPD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cmpd_design_evaluate(nullptr, nullptr), CMPD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cmpd_design_from_json("{}", 2, &raw), CMPD_ERR_PARSE);
  cmpd_design_destroy(nullptr);
}

TEST(CApi, EvaluateAndCompare) {
  auto d = create(128, 4);
  cmpd_report r{};
  ASSERT_EQ(cmpd_design_evaluate(d.get(), &r), CMPD_OK);
  EXPECT_NEAR(r.sqnr_db, 34.206042935394388, 1e-9);
  cmpd_report exact{};
  ASSERT_EQ(cmpd_design_evaluate_exact(d.get(), &exact), CMPD_OK);
  EXPECT_LT(std::abs(exact.total - r.total) / exact.total, 0.01);

  cmpd_comparison c{};
  ASSERT_EQ(cmpd_compare(128, 4, &c), CMPD_OK);
  EXPECT_EQ(c.fixed.sqnr_db, r.sqnr_db);
  EXPECT_NEAR(c.x_max_optimized, 6.78, 0.01);

  cmpd_report o{};
  ASSERT_EQ(cmpd_optimal_compandor_report(128, c.x_max_fixed, &o), CMPD_OK);
  EXPECT_EQ(o.sqnr_db, c.optimal.sqnr_db);

  size_t len = 0;
  ASSERT_EQ(cmpd_compare_json(128, 4, nullptr, 0, &len), CMPD_OK);
  std::string small(4, '\0');
  EXPECT_EQ(cmpd_compare_json(128, 4, small.data(), small.size(), &len), CMPD_ERR_BUFFER_TOO_SMALL);
}

TEST(CApi, OptimizeAndSweep) {
  cmpd_optimum opt{};
  ASSERT_EQ(cmpd_optimize_support(128, 8, &opt), CMPD_OK);
  EXPECT_NEAR(opt.x_opt, 7.28, 0.05);
  EXPECT_EQ(opt.last_cells, 7);

  size_t count = 0;
  ASSERT_EQ(cmpd_sweep(128, 4, 4.0, 10.0, 0.01, nullptr, nullptr, 0, &count), CMPD_OK);
  EXPECT_EQ(count, 601u);
  std::vector<double> xs(count), ds(count);
  ASSERT_EQ(cmpd_sweep(128, 4, 4.0, 10.0, 0.01, xs.data(), ds.data(), count, &count), CMPD_OK);
  EXPECT_EQ(xs.front(), 4.0);
  EXPECT_EQ(cmpd_sweep(128, 4, 1.0, 10.0, 0.01, nullptr, nullptr, 0, &count), CMPD_ERR_INVALID_CONFIG);
}

TEST(CApi, EncodeDecodeAndJsonRoundTrip) {
  auto d = create(128, 4, 6.78);
  const std::string json = to_json(d.get());
  cmpd_design* raw = nullptr;
  ASSERT_EQ(cmpd_design_from_json(json.data(), json.size(), &raw), CMPD_OK) << cmpd_last_error();
  Design back(raw);
  EXPECT_EQ(to_json(back.get()), json);

  std::vector<double> xs(5000);
  ASSERT_EQ(cmpd_sample_laplacian(1.0, 77, xs.size(), xs.data()), CMPD_OK);
  std::vector<uint32_t> a(xs.size()), b(xs.size());
  ASSERT_EQ(cmpd_design_encode(d.get(), xs.data(), xs.size(), a.data()), CMPD_OK);
  ASSERT_EQ(cmpd_design_encode(back.get(), xs.data(), xs.size(), b.data()), CMPD_OK);
  EXPECT_EQ(a, b);
  std::vector<double> ra(xs.size()), rb(xs.size());
  ASSERT_EQ(cmpd_design_decode(d.get(), a.data(), a.size(), ra.data()), CMPD_OK);
  ASSERT_EQ(cmpd_design_decode(back.get(), b.data(), b.size(), rb.data()), CMPD_OK);
  EXPECT_EQ(std::memcmp(ra.data(), rb.data(), ra.size() * sizeof(double)), 0);

  const uint32_t bad = 128;
  double out = 0.0;
  EXPECT_EQ(cmpd_design_decode(d.get(), &bad, 1, &out), CMPD_ERR_INVALID_ARGUMENT);
  const double nan = std::nan("");
  uint32_t idx = 0;
  EXPECT_EQ(cmpd_design_encode(d.get(), &nan, 1, &idx), CMPD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, MonteCarloIsDeterministic) {
  auto d = create(128, 4);
  double m1 = 0, s1 = 0, m2 = 0, s2 = 0;
  ASSERT_EQ(cmpd_design_monte_carlo(d.get(), 20000, 3, 2, &m1, &s1), CMPD_OK);
  ASSERT_EQ(cmpd_design_monte_carlo(d.get(), 20000, 3, 2, &m2, &s2), CMPD_OK);
  EXPECT_EQ(m1, m2);
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(cmpd_design_monte_carlo(d.get(), 100, 3, 1, &m1, &s1), CMPD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SamplerRejectsBadVariance) {
  double x = 0.0;
  EXPECT_EQ(cmpd_sample_laplacian(-1.0, 1, 1, &x), CMPD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cmpd_sample_laplacian(1.0, 1, 0, nullptr), CMPD_OK);
}
