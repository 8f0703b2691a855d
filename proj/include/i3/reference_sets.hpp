#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "i3/corpus.hpp"

namespace i3 {

enum class CountingRule { strict, weak, mid };

std::string_view to_string(CountingRule rule);
CountingRule parse_counting_rule(std::string_view text);

// Named venue sets. With no named sets and per_venue = true, every venue is its own scope.
struct ScopeConfig {
  std::map<std::string, std::vector<std::string>> named_sets;
  bool per_venue = false;
  bool doc_type_control = true;

  static ScopeConfig per_venue_scopes(bool doc_type_control = true);
  // JSON object: scope name -> array of venue ids.
  static ScopeConfig from_json(std::string_view json_text, bool doc_type_control = true);
};

struct ReferenceSetKey {
  std::string scope;
  int pub_year = 0;
  std::optional<DocType> doc_type;  // nullopt when document types are pooled

  auto operator<=>(const ReferenceSetKey&) const = default;
  bool operator==(const ReferenceSetKey&) const = default;
};

std::string describe(const ReferenceSetKey& key);

struct PercentileScore {
  std::string paper_id;
  double value = 0.0;
  CountingRule rule = CountingRule::mid;
  std::size_t refset_size = 0;
};

struct ReferenceSets {
  // Each set holds one record per distinct paper_id, in corpus order.
  std::map<ReferenceSetKey, std::vector<PublicationRecord>> sets;
  // Records whose venue lies outside every configured scope.
  std::vector<PublicationRecord> discarded;
  // paper_id -> key of the set holding it
  std::map<std::string, ReferenceSetKey> membership;

  const std::vector<PublicationRecord>* find_set_of(const std::string& paper_id) const;
  std::optional<ReferenceSetKey> key_of(const std::string& paper_id) const;
};

struct ReferenceSetOptions {
  std::size_t min_size = 1;   // smaller sets are dropped (records discarded)
  std::size_t warn_below = 20;
};

ReferenceSets build_reference_sets(const Corpus& corpus, const ScopeConfig& scopes,
                                   const ReferenceSetOptions& options = {},
                                   Diagnostics* diagnostics = nullptr);

// Percentile of a citation count against a population: L below, T equal (focal included).
double percentile_value(std::size_t below, std::size_t equal, std::size_t total,
                        CountingRule rule);

// Scores every record of a reference set, in input order.
std::vector<PercentileScore> percentile_scores(std::span<const PublicationRecord> refset,
                                               CountingRule rule);

// Scores for every paper of every reference set, computed on up to `threads` workers.
// Output is independent of the thread count.
std::map<std::string, PercentileScore> score_all(const ReferenceSets& refsets,
                                                 CountingRule rule, unsigned threads = 1);

using UnitScores = std::map<std::string, std::vector<PercentileScore>>;

// Per-unit scores sorted by descending value (ties by paper_id). Records outside any
// reference set are skipped with a warning.
UnitScores unit_percentiles(const Corpus& corpus, const ReferenceSets& refsets,
                            CountingRule rule, Diagnostics* diagnostics = nullptr,
                            unsigned threads = 1);

UnitScores unit_percentiles(const Corpus& corpus, const ReferenceSets& refsets,
                            const std::map<std::string, PercentileScore>& scored,
                            Diagnostics* diagnostics = nullptr);

}  // namespace i3
