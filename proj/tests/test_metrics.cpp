#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include <spoja/error.hpp>
#include <spoja/metrics.hpp>
#include <spoja/rng.hpp>

using namespace spoja;

namespace {

// Smallest value x with #{v ≤ x} ≥ q·N, scanning candidates in sorted order.
double reference_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double need = q * static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (static_cast<double>(i + 1) >= need) return v[i];
  return v.back();
}

}  // namespace

TEST(Metrics, SingleValue) {
  auto s = aggregate(std::vector<double>{0.1});
  EXPECT_EQ(s.median, 0.1);
  EXPECT_EQ(s.q10, 0.1);
  EXPECT_EQ(s.q90, 0.1);
  EXPECT_EQ(s.n_trials, 1u);
}

TEST(Metrics, TwoValues) {
  auto s = aggregate(std::vector<double>{1.0, 0.0});
  EXPECT_EQ(s.mean, 0.5);
  EXPECT_EQ(s.q10, 0.0);
  EXPECT_EQ(s.q90, 1.0);
  EXPECT_EQ(s.median, 0.0);
}

TEST(Metrics, MatchesReferenceQuantiles) {
  SplitMix64 g(2024);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(100);
    for (auto& x : v) x = g.uniform();
    auto s = aggregate(v);
    EXPECT_EQ(s.median, reference_quantile(v, 0.5));
    EXPECT_EQ(s.q10, reference_quantile(v, 0.1));
    EXPECT_EQ(s.q90, reference_quantile(v, 0.9));
    for (double q : {0.01, 0.25, 0.33, 0.75, 0.99, 1.0}) EXPECT_EQ(nearest_rank(v, q), reference_quantile(v, q));
  }
}

TEST(Metrics, PermutationInvariantAndBounded) {
  SplitMix64 g(5);
  std::vector<double> v(37);
  for (auto& x : v) x = g.uniform() * 10.0 - 3.0;
  auto a = aggregate(v);
  std::reverse(v.begin(), v.end());
  std::rotate(v.begin(), v.begin() + 11, v.end());
  auto b = aggregate(v);
  EXPECT_EQ(a.median, b.median);
  EXPECT_EQ(a.q10, b.q10);
  EXPECT_EQ(a.q90, b.q90);
  EXPECT_NEAR(a.mean, b.mean, 1e-14);
  EXPECT_GE(a.median, *std::min_element(v.begin(), v.end()));
  EXPECT_LE(a.median, *std::max_element(v.begin(), v.end()));
}

TEST(Metrics, SuccessRate) {
  auto s = aggregate(std::vector<double>{0.1, 0.2, 0.3, 0.4}, {true, false, true, true});
  EXPECT_EQ(s.success_rate, 0.75);
  auto r = bernoulli_rate({true, false, true, true});
  EXPECT_EQ(r.p, 0.75);
  EXPECT_NEAR(r.se, std::sqrt(0.75 * 0.25 / 4.0), 1e-15);
}

TEST(Metrics, EmptyInput) {
  try {
    aggregate(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::empty_input);
  }
}

TEST(Metrics, LogMomentMatchesDirect) {
  std::vector<double> logs{0.0, std::log(2.0), std::log(3.0), std::log(6.0)};
  auto lm = log_moment(logs);
  EXPECT_NEAR(lm.log_mean(), std::log(3.0), 1e-14);
  const double mean = 3.0;
  double ss = 0.0;
  for (double v : {1.0, 2.0, 3.0, 6.0}) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / 3.0 / 4.0);
  EXPECT_NEAR(lm.log_upper(2.0), std::log(mean + 2.0 * se), 1e-12);
}

TEST(Metrics, LogMomentSurvivesHugeLogs) {
  std::vector<double> logs{5000.0, 5000.0 + std::log(3.0)};
  EXPECT_NEAR(log_moment(logs).log_mean(), 5000.0 + std::log(2.0), 1e-10);
}

TEST(Metrics, FormatDoubleRoundTrips) {
  SplitMix64 g(1);
  for (int rep = 0; rep < 1000; ++rep) {
    const double v = (g.uniform() - 0.5) * std::pow(10.0, static_cast<int>(g.uniform() * 40) - 20);
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
    EXPECT_EQ(s.find(','), std::string::npos);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.0), "0");
}

TEST(Metrics, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Metrics, SummaryCsvLayout) {
  std::ostringstream os;
  write_summary_header(os);
  write_summary_row(os, {"fig1", "trunc_vec", 250, 250, 3, 3, 7, 100, 0.25, 0.125, 0.5, 1.0, 0.0});
  EXPECT_EQ(os.str(),
            "experiment_id,pipeline,n,d,s,k,seed_base,trials,sin2_median,sin2_q10,sin2_q90,"
            "support_recovery_rate,wall_time_ms\r\n"
            "fig1,trunc_vec,250,250,3,3,7,100,0.25,0.125,0.5,1,0\r\n");
}
