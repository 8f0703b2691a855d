#include "i3/indicators.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "text_util.hpp"

namespace i3 {

namespace {

std::string format_bound(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double refset_mean(const std::vector<PublicationRecord>& set) {
  double sum = 0.0;
  for (const auto& r : set) sum += static_cast<double>(r.citations);
  return sum / static_cast<double>(set.size());
}

// Mean citations of the reference set holding each record; cached per set.
class ExpectedRates {
 public:
  explicit ExpectedRates(const ReferenceSets& refsets) : refsets_(refsets) {}

  std::optional<double> of(const PublicationRecord& record) {
    const auto* set = refsets_.find_set_of(record.paper_id);
    if (!set || set->empty()) return std::nullopt;
    auto [it, inserted] = cache_.try_emplace(set, 0.0);
    if (inserted) it->second = refset_mean(*set);
    return it->second;
  }

 private:
  const ReferenceSets& refsets_;
  std::unordered_map<const void*, double> cache_;
};

}  // namespace

RankClassScheme::RankClassScheme(std::string name, std::vector<RankClass> classes)
    : name_(std::move(name)), classes_(std::move(classes)) {
  if (classes_.empty())
    throw Error(ErrorCode::configuration, "scheme '" + name_ + "' has no classes");
  if (classes_.front().lower != 0.0)
    throw Error(ErrorCode::configuration, "scheme '" + name_ + "' must start at 0");
  if (classes_.back().upper != 100.0)
    throw Error(ErrorCode::configuration, "scheme '" + name_ + "' must end at 100");
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    auto& c = classes_[i];
    if (!(c.lower < c.upper))
      throw Error(ErrorCode::configuration,
                  "scheme '" + name_ + "': class " + std::to_string(i) + " has lower >= upper");
    if (i > 0 && c.lower != classes_[i - 1].upper)
      throw Error(ErrorCode::configuration, "scheme '" + name_ + "': classes " +
                                                std::to_string(i - 1) + " and " +
                                                std::to_string(i) + " are not contiguous");
    if (!std::isfinite(c.weight))
      throw Error(ErrorCode::configuration,
                  "scheme '" + name_ + "': class " + std::to_string(i) + " weight not finite");
    if (c.label.empty()) c.label = format_bound(c.lower) + "-" + format_bound(c.upper) + "%";
  }
}

RankClassScheme RankClassScheme::pr6() {
  return RankClassScheme("PR6", {{0, 50, 1, "0-50%"},
                                 {50, 75, 2, "50-75%"},
                                 {75, 90, 3, "75-90%"},
                                 {90, 95, 4, "90-95%"},
                                 {95, 99, 5, "95-99%"},
                                 {99, 100, 6, "top-1%"}});
}

RankClassScheme RankClassScheme::excellence(double top_percent) {
  if (!(top_percent > 0.0 && top_percent < 100.0))
    throw Error(ErrorCode::domain, "excellence top percentage must lie in (0,100), got " +
                                       format_bound(top_percent));
  const double threshold = 100.0 - top_percent;
  return RankClassScheme("EI" + format_bound(top_percent),
                         {{0, threshold, 0, "bottom-" + format_bound(threshold) + "%"},
                          {threshold, 100, 1, "top-" + format_bound(top_percent) + "%"}});
}

RankClassScheme RankClassScheme::continuous() {
  RankClassScheme scheme;
  scheme.name_ = "CONTINUOUS";
  scheme.classes_ = {{0, 100, 1, "percentile"}};
  scheme.continuous_ = true;
  return scheme;
}

RankClassScheme RankClassScheme::by_name(std::string_view name) {
  const auto n = detail::lower(detail::trim(name));
  if (n == "pr6") return pr6();
  if (n == "continuous") return continuous();
  if (n.size() > 2 && n.starts_with("ei")) {
    char* end = nullptr;
    const std::string digits = n.substr(2);
    const double x = std::strtod(digits.c_str(), &end);
    if (end && *end == '\0') return excellence(x);
  }
  throw Error(ErrorCode::usage, "unknown scheme '" + std::string(name) +
                                    "' (expected PR6, EI10, EI1, CONTINUOUS)");
}

RankClassScheme RankClassScheme::from_json(std::string_view json_text, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::configuration, std::string("scheme file: ") + e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (doc.contains("name")) name = doc.at("name").get<std::string>();
    if (!doc.contains("classes"))
      throw Error(ErrorCode::configuration, "scheme file: missing 'classes'");
    list = &doc.at("classes");
  }
  if (!list->is_array())
    throw Error(ErrorCode::configuration, "scheme file: classes must be an array");
  std::vector<RankClass> classes;
  try {
    for (const auto& c : *list) {
      RankClass rc;
      rc.lower = c.at("lower").get<double>();
      rc.upper = c.at("upper").get<double>();
      rc.weight = c.at("weight").get<double>();
      if (c.contains("label")) rc.label = c.at("label").get<std::string>();
      classes.push_back(std::move(rc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::configuration, std::string("scheme file: ") + e.what());
  }
  return RankClassScheme(std::move(name), std::move(classes));
}

bool RankClassScheme::has_nonnegative_weights() const {
  if (continuous_) return true;
  for (const auto& c : classes_)
    if (c.weight < 0) return false;
  return true;
}

std::size_t RankClassScheme::class_index(double value) const {
  if (continuous_) return 0;
  for (std::size_t i = 0; i + 1 < classes_.size(); ++i)
    if (value < classes_[i].upper) return i;
  return classes_.size() - 1;
}

double RankClassScheme::weight(double value) const {
  return continuous_ ? value : classes_[class_index(value)].weight;
}

Classification classify(const PercentileScore& score, const RankClassScheme& scheme) {
  const auto index = scheme.class_index(score.value);
  return {index, scheme.is_continuous() ? score.value : scheme.classes()[index].weight};
}

std::string_view to_string(Indicator indicator) {
  switch (indicator) {
    case Indicator::I3: return "I3";
    case Indicator::PR6: return "PR6";
    case Indicator::EI: return "EI";
    case Indicator::TOTAL_CITATIONS: return "TOTAL_CITATIONS";
    case Indicator::CPP: return "CPP";
    case Indicator::JIF: return "JIF";
    case Indicator::RCR: return "RCR";
    case Indicator::MNCS: return "MNCS";
  }
  return "";
}

bool is_citable(DocType type) {
  return type == DocType::article || type == DocType::review || type == DocType::letter;
}

std::vector<std::size_t> class_counts(std::span<const PercentileScore> scores,
                                      const RankClassScheme& scheme) {
  std::vector<std::size_t> counts(scheme.classes().size(), 0);
  for (const auto& s : scores) ++counts[scheme.class_index(s.value)];
  return counts;
}

double i3_from_counts(std::span<const std::size_t> counts, const RankClassScheme& scheme) {
  if (counts.size() != scheme.classes().size())
    throw Error(ErrorCode::domain, "class count vector does not match scheme '" +
                                       scheme.name() + "'");
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    total += scheme.classes()[i].weight * static_cast<double>(counts[i]);
  return total;
}

IndicatorValue i3(std::span<const PercentileScore> scores, const RankClassScheme& scheme,
                  std::string unit_id) {
  IndicatorValue out{std::move(unit_id), Indicator::I3, 0.0, scores.size(), scheme.name()};
  if (scheme.is_continuous()) {
    for (const auto& s : scores) out.value += s.value;
  } else {
    out.value = i3_from_counts(class_counts(scores, scheme), scheme);
  }
  return out;
}

IndicatorValue excellence_indicator(std::span<const PercentileScore> scores,
                                    double top_percent, std::string unit_id) {
  const auto scheme = RankClassScheme::excellence(top_percent);
  const double threshold = 100.0 - top_percent;
  std::size_t count = 0;
  for (const auto& s : scores)
    if (s.value >= threshold) ++count;
  return {std::move(unit_id), Indicator::EI, static_cast<double>(count), scores.size(),
          scheme.name()};
}

IndicatorValue total_citations(std::span<const PublicationRecord> records,
                               std::string unit_id) {
  std::int64_t sum = 0;
  for (const auto& r : records) sum += r.citations;
  return {std::move(unit_id), Indicator::TOTAL_CITATIONS, static_cast<double>(sum),
          records.size(), std::nullopt};
}

IndicatorValue cpp(std::span<const PublicationRecord> records, std::string unit_id) {
  if (records.empty())
    throw Error(ErrorCode::undefined_indicator,
                "c/p undefined for unit '" + unit_id + "' without papers");
  auto total = total_citations(records, unit_id);
  return {std::move(unit_id), Indicator::CPP,
          total.value / static_cast<double>(records.size()), records.size(), std::nullopt};
}

IndicatorValue jif(const Corpus& corpus, const std::string& venue_id, int census_year) {
  if (corpus.census_year != census_year)
    throw Error(ErrorCode::domain, "corpus census year " + std::to_string(corpus.census_year) +
                                       " does not match requested " +
                                       std::to_string(census_year));
  std::set<std::string> seen;
  std::int64_t citations = 0;
  std::size_t items = 0;
  for (const auto& r : corpus.records) {
    if (r.venue_id != venue_id || !is_citable(r.doc_type)) continue;
    if (r.pub_year != census_year - 1 && r.pub_year != census_year - 2) continue;
    if (!seen.insert(r.paper_id).second) continue;
    citations += r.citations;
    ++items;
  }
  if (items == 0)
    throw Error(ErrorCode::undefined_indicator,
                "JIF undefined for venue '" + venue_id + "': no citable items in " +
                    std::to_string(census_year - 2) + "-" + std::to_string(census_year - 1));
  return {venue_id, Indicator::JIF,
          static_cast<double>(citations) / static_cast<double>(items), items, std::nullopt};
}

IndicatorValue rcr(std::span<const PublicationRecord> records, const ReferenceSets& refsets,
                   std::string unit_id) {
  if (records.empty())
    throw Error(ErrorCode::undefined_indicator, "RCR undefined for empty unit '" + unit_id + "'");
  ExpectedRates expected(refsets);
  double observed = 0.0;
  double expected_sum = 0.0;
  for (const auto& r : records) {
    auto e = expected.of(r);
    if (!e)
      throw Error(ErrorCode::undefined_indicator,
                  "RCR undefined: paper " + r.paper_id + " has no reference set");
    observed += static_cast<double>(r.citations);
    expected_sum += *e;
  }
  const double n = static_cast<double>(records.size());
  const double mocr = observed / n;
  const double mecr = expected_sum / n;
  if (mecr == 0.0)
    throw Error(ErrorCode::undefined_indicator,
                "RCR undefined for unit '" + unit_id + "': expected citation rate is 0");
  return {std::move(unit_id), Indicator::RCR, mocr / mecr, records.size(), std::nullopt};
}

IndicatorValue mncs(std::span<const PublicationRecord> records, const ReferenceSets& refsets,
                    std::string unit_id, Diagnostics* diagnostics) {
  ExpectedRates expected(refsets);
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& r : records) {
    auto e = expected.of(r);
    if (!e || *e <= 0.0) {
      if (diagnostics)
        diagnostics->warn("MNCS: unit " + unit_id + " paper " + r.paper_id +
                          (e ? " in zero-mean reference set; excluded"
                             : " has no reference set; excluded"));
      continue;
    }
    sum += static_cast<double>(r.citations) / *e;
    ++used;
  }
  if (used == 0)
    throw Error(ErrorCode::undefined_indicator,
                "MNCS undefined for unit '" + unit_id + "': no paper with a positive expected rate");
  return {std::move(unit_id), Indicator::MNCS, sum / static_cast<double>(used), used,
          std::nullopt};
}

}  // namespace i3
