#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "i3/corpus.hpp"
#include "i3/indicators.hpp"
#include "i3/inference.hpp"
#include "i3/reference_sets.hpp"
#include "i3/reporting.hpp"

namespace i3 {

struct AnalysisOptions {
  ScopeConfig scopes = ScopeConfig::per_venue_scopes();
  CountingRule rule = CountingRule::mid;
  RankClassScheme scheme = RankClassScheme::continuous();
  double ei_top = 10.0;
  TestOptions test;
  ReferenceSetOptions refset;
  unsigned threads = 1;
};

// Indicator names accepted by Analysis::indicator and Analysis::correlate.
inline constexpr const char* kIndicatorNames[] = {
    "n_papers", "total_citations", "i3", "pr6", "ei", "cpp", "jif", "mncs", "rcr"};

// Full pipeline over one corpus: reference sets, percentiles, indicators, tests, reports.
class Analysis {
 public:
  Analysis(Corpus corpus, AnalysisOptions options);

  const Corpus& corpus() const { return corpus_; }
  const AnalysisOptions& options() const { return options_; }
  const ReferenceSets& reference_sets() const { return refsets_; }
  const UnitScores& unit_scores() const { return scores_; }
  const Diagnostics& diagnostics() const { return diagnostics_; }

  // Evaluated unit ids (non-empty), sorted.
  const std::vector<std::string>& units() const { return units_; }
  bool has_unit(const std::string& unit_id) const;
  std::span<const PublicationRecord> records_of(const std::string& unit_id) const;
  std::span<const PercentileScore> scores_of(const std::string& unit_id) const;

  // nullopt when the indicator is undefined for the unit; throws on unknown names/units.
  std::optional<double> indicator(const std::string& unit_id, std::string_view name) const;

  IndicatorReport report(std::map<std::string, std::string> extra_metadata = {}) const;
  SignificanceResult compare(const std::string& unit_a, const std::string& unit_b) const;
  CorrelationMatrix correlate(const std::vector<std::string>& indicator_names) const;
  std::vector<UnitCurves> curves(const std::vector<std::string>& unit_ids) const;
  // paper_id, unit_id, scope, pub_year, doc_type, value, rule
  std::string percentiles_csv() const;

 private:
  Corpus corpus_;
  AnalysisOptions options_;
  Diagnostics diagnostics_;
  ReferenceSets refsets_;
  std::map<std::string, PercentileScore> scored_;
  UnitScores scores_;
  UnitGroups groups_;
  std::vector<std::string> units_;
  // unit -> values aligned with kIndicatorNames; nullopt when undefined
  std::map<std::string, std::vector<std::optional<double>>> values_;
};

}  // namespace i3
