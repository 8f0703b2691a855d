#include "i3/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "text_util.hpp"

namespace i3 {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::domain, "alpha must lie in (0,1)");
}

Direction direction_of(double z, double p, double alpha) {
  if (p < alpha && z > 0) return Direction::above;
  if (p < alpha && z < 0) return Direction::below;
  return Direction::none;
}

double mean_weight(std::span<const PercentileScore> scores, const RankClassScheme& scheme) {
  double sum = 0.0;
  for (const auto& s : scores) sum += scheme.weight(s.value);
  return sum / static_cast<double>(scores.size());
}

std::size_t top_count(std::span<const PercentileScore> scores, double top_percent) {
  const double threshold = 100.0 - top_percent;
  return static_cast<std::size_t>(std::count_if(
      scores.begin(), scores.end(), [&](const auto& s) { return s.value >= threshold; }));
}

void check_top(double top_percent) {
  if (!(top_percent > 0.0 && top_percent < 100.0))
    throw Error(ErrorCode::domain, "top percentage must lie in (0,100)");
}

SignificanceResult finish(std::string unit_id, std::string scheme_name, TestMode mode,
                          double z, double alpha) {
  SignificanceResult r;
  r.unit_id = std::move(unit_id);
  r.scheme_name = std::move(scheme_name);
  r.mode = mode;
  r.z = z;
  r.p_two_sided = two_sided_p(z);
  r.alpha = alpha;
  r.direction = direction_of(z, r.p_two_sided, alpha);
  return r;
}

}  // namespace

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::above: return "above";
    case Direction::below: return "below";
    case Direction::none: return "none";
  }
  return "none";
}

std::string_view to_string(TestMode mode) {
  return mode == TestMode::mean_weight ? "mean-weight" : "top-share";
}

TestMode parse_test_mode(std::string_view text) {
  const auto t = detail::lower(detail::trim(text));
  if (t == "mean-weight" || t == "mean_weight") return TestMode::mean_weight;
  if (t == "top-share" || t == "top_share") return TestMode::top_share;
  throw Error(ErrorCode::usage, "unknown test mode '" + std::string(text) +
                                    "' (expected mean-weight or top-share)");
}

NullMoments null_moments(const RankClassScheme& scheme) {
  if (scheme.is_continuous()) return {50.0, 100.0 * 100.0 / 12.0};
  double mean = 0.0;
  double second = 0.0;
  for (const auto& c : scheme.classes()) {
    const double p = (c.upper - c.lower) / 100.0;
    mean += p * c.weight;
    second += p * c.weight * c.weight;
  }
  return {mean, std::max(0.0, second - mean * mean)};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

SignificanceResult z_test_weights(std::span<const double> weights, const NullMoments& null,
                                  double alpha) {
  check_alpha(alpha);
  if (weights.empty()) throw Error(ErrorCode::undefined_indicator, "z-test on an empty unit");
  if (!(null.variance > 0.0))
    throw Error(ErrorCode::domain, "degenerate scheme: null variance is 0");
  const double n = static_cast<double>(weights.size());
  const double mean = std::accumulate(weights.begin(), weights.end(), 0.0) / n;
  const double z = (mean - null.mean) / std::sqrt(null.variance / n);
  return finish({}, {}, TestMode::mean_weight, z, alpha);
}

SignificanceResult z_test_expectation(std::span<const PercentileScore> scores,
                                      const RankClassScheme& scheme,
                                      const TestOptions& options, std::string unit_id) {
  check_alpha(options.alpha);
  if (scores.empty())
    throw Error(ErrorCode::undefined_indicator,
                "z-test undefined for unit '" + unit_id + "' without scored papers");
  const double n = static_cast<double>(scores.size());
  if (options.mode == TestMode::top_share) {
    check_top(options.top_percent);
    const double p0 = options.top_percent / 100.0;
    const double share = static_cast<double>(top_count(scores, options.top_percent)) / n;
    const double z = (share - p0) / std::sqrt(p0 * (1.0 - p0) / n);
    return finish(std::move(unit_id),
                  RankClassScheme::excellence(options.top_percent).name(), options.mode, z,
                  options.alpha);
  }
  const auto null = null_moments(scheme);
  if (!(null.variance > 0.0))
    throw Error(ErrorCode::domain,
                "degenerate scheme '" + scheme.name() + "': null variance is 0");
  const double z = (mean_weight(scores, scheme) - null.mean) / std::sqrt(null.variance / n);
  return finish(std::move(unit_id), scheme.name(), options.mode, z, options.alpha);
}

SignificanceResult z_test_two_units(std::span<const PercentileScore> scores_a,
                                    std::span<const PercentileScore> scores_b,
                                    const RankClassScheme& scheme,
                                    const TestOptions& options, std::string unit_a) {
  check_alpha(options.alpha);
  if (scores_a.empty() || scores_b.empty())
    throw Error(ErrorCode::undefined_indicator, "two-unit z-test needs two non-empty units");
  const double na = static_cast<double>(scores_a.size());
  const double nb = static_cast<double>(scores_b.size());
  if (options.mode == TestMode::top_share) {
    check_top(options.top_percent);
    const double xa = static_cast<double>(top_count(scores_a, options.top_percent));
    const double xb = static_cast<double>(top_count(scores_b, options.top_percent));
    const double pooled = (xa + xb) / (na + nb);
    const double var = pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb);
    const double diff = xa / na - xb / nb;
    const double z = var > 0.0 ? diff / std::sqrt(var) : 0.0;
    return finish(std::move(unit_a),
                  RankClassScheme::excellence(options.top_percent).name(), options.mode, z,
                  options.alpha);
  }
  const auto null = null_moments(scheme);
  if (!(null.variance > 0.0))
    throw Error(ErrorCode::domain,
                "degenerate scheme '" + scheme.name() + "': null variance is 0");
  const double diff = mean_weight(scores_a, scheme) - mean_weight(scores_b, scheme);
  const double z = diff / std::sqrt(null.variance * (1.0 / na + 1.0 / nb));
  return finish(std::move(unit_a), scheme.name(), options.mode, z, options.alpha);
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share the average of ranks i+1..j+1
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::domain, "correlation of columns with different lengths");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  return pearson(rx, ry);
}

double correlation_p_value(double r, std::size_t n) {
  if (n < 3) return 1.0;
  if (std::fabs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = std::fabs(r) * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
}

std::string_view significance_stars(double p) {
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

CorrelationMatrix correlations(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size())
    throw Error(ErrorCode::domain, "correlation names and columns differ in count");
  if (columns.empty()) throw Error(ErrorCode::domain, "no indicator columns to correlate");
  const std::size_t n = columns.front().size();
  for (const auto& c : columns)
    if (c.size() != n) throw Error(ErrorCode::domain, "indicator columns differ in length");
  if (n < 3)
    throw Error(ErrorCode::domain,
                "correlation needs at least 3 units, got " + std::to_string(n));

  const std::size_t k = columns.size();
  CorrelationMatrix m;
  m.indicator_names = names;
  m.n = n;
  auto blank = std::vector<std::vector<std::optional<double>>>(
      k, std::vector<std::optional<double>>(k));
  m.pearson = m.spearman = m.pearson_p = m.spearman_p = blank;
  for (std::size_t i = 0; i < k; ++i) {
    m.pearson[i][i] = 1.0;
    m.spearman[i][i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto r = pearson(columns[i], columns[j]);
      const auto rho = spearman(columns[i], columns[j]);
      m.pearson[i][j] = m.pearson[j][i] = r;
      m.spearman[i][j] = m.spearman[j][i] = rho;
      if (r) m.pearson_p[i][j] = m.pearson_p[j][i] = correlation_p_value(*r, n);
      if (rho) m.spearman_p[i][j] = m.spearman_p[j][i] = correlation_p_value(*rho, n);
    }
  }
  return m;
}

}  // namespace i3
