#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "i3/corpus.hpp"
#include "i3/reference_sets.hpp"

namespace i3::test {

inline PublicationRecord record(std::string paper, std::string unit, std::string venue,
                                int year, std::int64_t citations,
                                DocType type = DocType::article) {
  return {std::move(paper), std::move(unit), std::move(venue), year, type, citations};
}

inline std::vector<PercentileScore> scores(const std::vector<double>& values) {
  std::vector<PercentileScore> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back({"s" + std::to_string(i), values[i], CountingRule::mid, 100});
  return out;
}

// Counts every other member of the set; quadratic over the set.
inline double oracle_percentile(const std::vector<std::int64_t>& set, std::int64_t c,
                                CountingRule rule) {
  double below = 0, equal = 0;
  for (auto x : set) {
    if (x < c) below += 1;
    if (x == c) equal += 1;
  }
  const double n = static_cast<double>(set.size());
  switch (rule) {
    case CountingRule::strict: return 100.0 * below / n;
    case CountingRule::weak: return 100.0 * (below + equal) / n;
    case CountingRule::mid: return 100.0 * (below + equal / 2.0) / n;
  }
  return 0;
}

// One venue per unit paper so each paper sits in its own reference set.
inline Corpus single_set_corpus(const std::vector<std::int64_t>& citations,
                                const std::string& unit = "U") {
  Corpus c;
  c.census_year = 2009;
  for (std::size_t i = 0; i < citations.size(); ++i)
    c.records.push_back(record("p" + std::to_string(i), i == 0 ? unit : "", "V", 2007,
                               citations[i]));
  return c;
}

}  // namespace i3::test
