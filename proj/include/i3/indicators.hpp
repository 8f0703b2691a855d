#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "i3/corpus.hpp"
#include "i3/reference_sets.hpp"

namespace i3 {

struct RankClass {
  double lower = 0.0;
  double upper = 0.0;
  double weight = 0.0;
  std::string label;
};

// Percentile rank classes with weights. Classes are closed below and open above,
// except the last one, which includes 100. A continuous scheme weights each paper by
// its percentile value instead.
class RankClassScheme {
 public:
  RankClassScheme(std::string name, std::vector<RankClass> classes);

  static RankClassScheme pr6();
  static RankClassScheme excellence(double top_percent);
  static RankClassScheme continuous();
  // PR6, EI10, EI1, CONTINUOUS (case-insensitive); EI<x> accepts any 0 < x < 100.
  static RankClassScheme by_name(std::string_view name);
  // JSON array of {"lower","upper","weight"[,"label"]}, or an object {"name", "classes": [...]}.
  static RankClassScheme from_json(std::string_view json_text, std::string name = "custom");

  const std::string& name() const { return name_; }
  const std::vector<RankClass>& classes() const { return classes_; }
  bool is_continuous() const { return continuous_; }
  bool has_nonnegative_weights() const;

  // Index of the class containing `value`; 0 for the continuous scheme.
  std::size_t class_index(double value) const;
  double weight(double value) const;

 private:
  RankClassScheme() = default;

  std::string name_;
  std::vector<RankClass> classes_;
  bool continuous_ = false;
};

struct Classification {
  std::size_t index = 0;
  double weight = 0.0;
};

Classification classify(const PercentileScore& score, const RankClassScheme& scheme);

enum class Indicator { I3, PR6, EI, TOTAL_CITATIONS, CPP, JIF, RCR, MNCS };

std::string_view to_string(Indicator indicator);

struct IndicatorValue {
  std::string unit_id;
  Indicator indicator = Indicator::I3;
  double value = 0.0;
  std::size_t n_papers = 0;
  std::optional<std::string> scheme_name;
};

// Number of scores in each class of the scheme (a single bin for the continuous scheme).
std::vector<std::size_t> class_counts(std::span<const PercentileScore> scores,
                                      const RankClassScheme& scheme);

IndicatorValue i3(std::span<const PercentileScore> scores, const RankClassScheme& scheme,
                  std::string unit_id = {});
// I3 from precomputed class counts, e.g. a published class table.
double i3_from_counts(std::span<const std::size_t> counts, const RankClassScheme& scheme);

IndicatorValue excellence_indicator(std::span<const PercentileScore> scores,
                                    double top_percent = 10.0, std::string unit_id = {});

IndicatorValue total_citations(std::span<const PublicationRecord> records,
                               std::string unit_id = {});
IndicatorValue cpp(std::span<const PublicationRecord> records, std::string unit_id = {});
IndicatorValue jif(const Corpus& corpus, const std::string& venue_id, int census_year);
IndicatorValue rcr(std::span<const PublicationRecord> records, const ReferenceSets& refsets,
                   std::string unit_id = {});
IndicatorValue mncs(std::span<const PublicationRecord> records, const ReferenceSets& refsets,
                    std::string unit_id = {}, Diagnostics* diagnostics = nullptr);

bool is_citable(DocType type);

}  // namespace i3
