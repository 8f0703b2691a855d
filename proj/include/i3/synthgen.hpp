#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "i3/corpus.hpp"
#include "i3/indicators.hpp"

namespace i3 {

enum class DistributionKind { lognormal, power_law, constant };

struct CitationDistribution {
  DistributionKind kind = DistributionKind::lognormal;
  double mu = 1.5;       // lognormal
  double sigma = 1.2;    // lognormal
  double alpha = 2.5;    // power law exponent, > 1
  std::int64_t c_min = 1;   // power law lower cutoff, >= 1
  std::int64_t value = 0;   // constant
};

struct GeneratorSpec {
  std::uint64_t seed = 1;
  int n_units = 10;
  int min_papers = 5;
  int max_papers = 50;
  CitationDistribution distribution;
  int n_venues = 5;
  // Venue ids equal unit ids (journal-level evaluation); n_venues is ignored.
  bool units_are_venues = false;
  std::vector<int> years = {2007, 2008};
  std::map<DocType, double> doc_type_mix = {{DocType::article, 1.0}};
  int census_year = 2009;

  static GeneratorSpec from_json(std::string_view json_text);
  void validate() const;
};

// 64-bit Mersenne Twister with uniform/normal/power-law transforms defined here rather
// than by the standard library, so sample streams are reproducible across platforms.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  std::int64_t citations(const CitationDistribution& distribution);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Corpus generate(const GeneratorSpec& spec);

struct DilutionResult {
  double cpp_before = 0.0;
  double cpp_after = 0.0;
  double i3_before = 0.0;
  double i3_after = 0.0;
};

// Appends papers with the given citation counts to a unit. Existing percentiles are kept;
// each added paper is scored against its reference set plus itself.
DilutionResult dilute(std::span<const PublicationRecord> unit_records,
                      std::span<const std::int64_t> added_citations,
                      const ReferenceSets& refsets, CountingRule rule,
                      const RankClassScheme& scheme);

// Generates a corpus from `spec` (per-venue scopes) and adds `added_low_cited` uncited
// papers to `base_unit`.
DilutionResult dilution_experiment(const GeneratorSpec& spec, const std::string& base_unit,
                                   std::size_t added_low_cited,
                                   CountingRule rule = CountingRule::mid,
                                   const RankClassScheme& scheme = RankClassScheme::pr6());

}  // namespace i3
