#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "i3/indicators.hpp"

namespace i3 {

enum class Direction { above, below, none };
std::string_view to_string(Direction direction);

enum class TestMode {
  mean_weight,  // z on the mean per-paper class weight under uniform percentiles
  top_share,    // z on the share of papers in the top-x% class
};
std::string_view to_string(TestMode mode);
TestMode parse_test_mode(std::string_view text);

struct NullMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Moments of the scheme weight of a percentile drawn uniformly from [0,100].
NullMoments null_moments(const RankClassScheme& scheme);

double normal_cdf(double x);
double two_sided_p(double z);

struct SignificanceResult {
  std::string unit_id;
  std::string reference = "expectation";  // or the unit compared against
  std::string scheme_name;
  TestMode mode = TestMode::mean_weight;
  double z = 0.0;
  double p_two_sided = 1.0;
  Direction direction = Direction::none;
  double alpha = 0.01;
};

struct TestOptions {
  double alpha = 0.01;
  TestMode mode = TestMode::mean_weight;
  double top_percent = 10.0;  // used by TestMode::top_share
};

SignificanceResult z_test_expectation(std::span<const PercentileScore> scores,
                                      const RankClassScheme& scheme,
                                      const TestOptions& options = {},
                                      std::string unit_id = {});

// z-test of unit A against unit B; positive z means A above B.
SignificanceResult z_test_two_units(std::span<const PercentileScore> scores_a,
                                    std::span<const PercentileScore> scores_b,
                                    const RankClassScheme& scheme,
                                    const TestOptions& options = {},
                                    std::string unit_a = {});

// Same tests from per-paper weights directly (useful when scores are synthetic).
SignificanceResult z_test_weights(std::span<const double> weights, const NullMoments& null,
                                  double alpha = 0.01);

std::vector<double> mid_ranks(std::span<const double> values);
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);
// Two-sided p of a correlation coefficient from the t approximation with n-2 df.
double correlation_p_value(double r, std::size_t n);
std::string_view significance_stars(double p);

struct CorrelationMatrix {
  std::vector<std::string> indicator_names;
  // Undefined entries (constant columns) are nullopt.
  std::vector<std::vector<std::optional<double>>> pearson;
  std::vector<std::vector<std::optional<double>>> spearman;
  std::vector<std::vector<std::optional<double>>> pearson_p;
  std::vector<std::vector<std::optional<double>>> spearman_p;
  std::size_t n = 0;
};

// columns[j] holds indicator j over all units; every column has the same length >= 3.
CorrelationMatrix correlations(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& columns);

}  // namespace i3
