#include <cmath>
#include <random>

#include "doctest.h"
#include "i3/error.hpp"
#include "i3/inference.hpp"
#include "support.hpp"

using namespace i3;
using test::scores;

namespace {

// One representative percentile per PR6 class, repeated by count (bottom class first).
std::vector<double> pr6_sample(const std::vector<int>& counts) {
  const double mids[] = {25.5, 62.5, 82.5, 92.5, 97.5, 99.5};
  std::vector<double> out;
  for (std::size_t c = 0; c < counts.size(); ++c)
    for (int i = 0; i < counts[c]; ++i) out.push_back(mids[c]);
  return out;
}

}  // namespace

TEST_CASE("null moments") {
  const auto pr6 = null_moments(RankClassScheme::pr6());
  CHECK(pr6.mean == doctest::Approx(1.91).epsilon(1e-12));
  CHECK(pr6.variance + pr6.mean * pr6.mean == doctest::Approx(5.01).epsilon(1e-12));
  CHECK(pr6.variance == doctest::Approx(1.3619).epsilon(1e-12));

  const auto cont = null_moments(RankClassScheme::continuous());
  CHECK(cont.mean == doctest::Approx(50.0));
  CHECK(cont.variance == doctest::Approx(10000.0 / 12.0));

  const auto ei = null_moments(RankClassScheme::excellence(10));
  CHECK(ei.mean == doctest::Approx(0.1));
  CHECK(ei.variance == doctest::Approx(0.09));
}

TEST_CASE("normal distribution helpers") {
  CHECK(normal_cdf(0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975));
  CHECK(two_sided_p(2.5758293035489) == doctest::Approx(0.01));
  CHECK(two_sided_p(-1.0) == doctest::Approx(two_sided_p(1.0)));
}

TEST_CASE("z against expectation") {
  const auto pr6 = RankClassScheme::pr6();
  const auto at_null = z_test_expectation(scores(pr6_sample({50, 25, 15, 5, 4, 1})), pr6);
  CHECK(at_null.z == doctest::Approx(0.0));
  CHECK(at_null.direction == Direction::none);

  const auto flat = z_test_expectation(scores(std::vector<double>(12, 50.0)),
                                       RankClassScheme::continuous());
  CHECK(flat.z == 0.0);
  CHECK(flat.p_two_sided == 1.0);

  const auto high = z_test_expectation(scores(std::vector<double>(30, 99.5)), pr6);
  CHECK(high.direction == Direction::above);
  const auto low = z_test_expectation(scores(std::vector<double>(30, 10.0)), pr6);
  CHECK(low.direction == Direction::below);
  CHECK(low.z < 0);

  // mean weight 2 over 40 papers against 1.91
  const auto s = z_test_expectation(scores(std::vector<double>(40, 60.0)), pr6);
  CHECK(s.z == doctest::Approx((2.0 - 1.91) / std::sqrt(1.3619 / 40)));

  CHECK_THROWS_AS(z_test_expectation(scores({}), pr6), Error);
}

TEST_CASE("top-share test") {
  TestOptions o;
  o.mode = TestMode::top_share;
  o.top_percent = 10;
  // 8 of 20 papers in the top decile
  std::vector<double> v(12, 40.0);
  for (int i = 0; i < 8; ++i) v.push_back(95.0);
  const auto r = z_test_expectation(scores(v), RankClassScheme::pr6(), o);
  CHECK(r.z == doctest::Approx((0.4 - 0.1) / std::sqrt(0.1 * 0.9 / 20)));
  CHECK(r.mode == TestMode::top_share);
  CHECK(parse_test_mode("top-share") == TestMode::top_share);
  CHECK_THROWS_AS(parse_test_mode("chi2"), Error);
}

TEST_CASE("two-unit z test") {
  const auto pr6 = RankClassScheme::pr6();
  const auto pi1 = scores(pr6_sample({7, 6, 3, 1, 3, 3}));
  const auto pi2 = scores(pr6_sample({35, 14, 10, 1, 5, 0}));
  const auto r = z_test_two_units(pi1, pi2, pr6, {}, "PI1");
  const double oracle = (65.0 / 23 - 122.0 / 65) / std::sqrt(1.3619 * (1.0 / 23 + 1.0 / 65));
  CHECK(r.z == doctest::Approx(oracle));
  CHECK(r.p_two_sided < 0.05);
  CHECK(r.direction == Direction::above);
  CHECK(z_test_two_units(pi2, pi1, pr6).z == doctest::Approx(-r.z));
  CHECK(z_test_two_units(pi1, pi1, pr6).z == 0.0);
  CHECK(z_test_two_units(pi1, pi1, pr6).direction == Direction::none);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(1 + rng() % 30), b(1 + rng() % 30);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    for (auto mode : {TestMode::mean_weight, TestMode::top_share}) {
      TestOptions o;
      o.mode = mode;
      for (const auto& scheme : {pr6, RankClassScheme::continuous()})
        CHECK(z_test_two_units(scores(a), scores(b), scheme, o).z ==
              doctest::Approx(-z_test_two_units(scores(b), scores(a), scheme, o).z));
    }
  }
}

TEST_CASE("ranks and correlations") {
  const std::vector<double> ties = {3, 1, 3, 2};
  CHECK(mid_ranks(ties) == std::vector<double>{3.5, 1, 3.5, 2});

  const std::vector<double> x = {1, 2, 3, 4}, y = {2, 1, 4, 3};
  CHECK(*spearman(x, y) == 0.6);
  CHECK(*pearson(x, x) == 1.0);
  CHECK(*spearman(x, x) == 1.0);

  std::vector<double> a, ea;
  for (int i = 0; i < 12; ++i) {
    a.push_back(i * 0.7 - 2);
    ea.push_back(std::exp(a.back()));
  }
  CHECK(*spearman(a, ea) == 1.0);
  CHECK(*pearson(a, ea) < 1.0);

  const std::vector<double> flat = {2, 2, 2, 2};
  CHECK_FALSE(pearson(x, flat).has_value());
  CHECK_FALSE(spearman(flat, x).has_value());
}

TEST_CASE("correlation p-values and stars") {
  // Student t with 2 degrees of freedom has a closed-form two-sided tail.
  const double t = 0.6 * std::sqrt(2.0 / (1.0 - 0.36));
  CHECK(correlation_p_value(0.6, 4) == doctest::Approx(1.0 - t / std::sqrt(t * t + 2.0)));
  CHECK(correlation_p_value(1.0, 10) == 0.0);
  CHECK(significance_stars(0.001) == "**");
  CHECK(significance_stars(0.02) == "*");
  CHECK(significance_stars(0.2) == "");
}

TEST_CASE("correlation matrix") {
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {2, 4, 6, 8, 10}, c = {5, 1, 4, 2, 3};
  const auto m = correlations({"a", "b", "c"}, {a, b, c});
  CHECK(m.n == 5);
  CHECK(*m.spearman[0][1] == 1.0);
  CHECK(*m.pearson[1][0] == doctest::Approx(1.0));
  CHECK(*m.spearman[2][2] == 1.0);
  CHECK(*m.spearman[0][2] == *m.spearman[2][0]);
  CHECK_THROWS_AS(correlations({"a", "b"}, {{1, 2}, {2, 1}}), Error);
}
