#include "i3/analysis.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <thread>

#include "text_util.hpp"

namespace i3 {

namespace {

constexpr std::size_t kIndicatorCount = std::size(kIndicatorNames);

std::size_t indicator_index(std::string_view name) {
  const auto n = detail::lower(detail::trim(name));
  for (std::size_t i = 0; i < kIndicatorCount; ++i)
    if (n == kIndicatorNames[i]) return i;
  throw Error(ErrorCode::usage, "unknown indicator '" + std::string(name) + "'");
}

template <typename F>
std::optional<double> defined_or_null(F&& compute) {
  try {
    return compute();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::undefined_indicator) return std::nullopt;
    throw;
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Analysis::Analysis(Corpus corpus, AnalysisOptions options)
    : corpus_(std::move(corpus)), options_(std::move(options)) {
  validate(corpus_);
  if (!(options_.ei_top > 0.0 && options_.ei_top < 100.0))
    throw Error(ErrorCode::domain, "EI top percentage must lie in (0,100)");
  if (!(options_.test.alpha > 0.0 && options_.test.alpha < 1.0))
    throw Error(ErrorCode::domain, "alpha must lie in (0,1)");
  options_.test.top_percent = options_.ei_top;
  unsigned threads = options_.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  refsets_ = build_reference_sets(corpus_, options_.scopes, options_.refset, &diagnostics_);
  scored_ = score_all(refsets_, options_.rule, threads);
  scores_ = unit_percentiles(corpus_, refsets_, scored_, &diagnostics_);
  groups_ = group_by_unit(corpus_);
  units_ = evaluated_units(corpus_);

  std::set<std::string> venues;
  for (const auto& r : corpus_.records) venues.insert(r.venue_id);

  const auto pr6 = RankClassScheme::pr6();
  for (const auto& unit : units_) {
    const auto& records = groups_.at(unit);
    const auto& scores = scores_[unit];
    auto& row = values_[unit];
    row.resize(kIndicatorCount);
    row[0] = static_cast<double>(records.size());
    row[1] = total_citations(records, unit).value;
    row[2] = i3(scores, options_.scheme, unit).value;
    row[3] = i3(scores, pr6, unit).value;
    row[4] = excellence_indicator(scores, options_.ei_top, unit).value;
    row[5] = defined_or_null([&] { return cpp(records, unit).value; });
    if (venues.count(unit))
      row[6] = defined_or_null([&] { return jif(corpus_, unit, corpus_.census_year).value; });
    row[7] = defined_or_null([&] { return mncs(records, refsets_, unit, &diagnostics_).value; });
    row[8] = defined_or_null([&] { return rcr(records, refsets_, unit).value; });
  }
}

bool Analysis::has_unit(const std::string& unit_id) const {
  return std::binary_search(units_.begin(), units_.end(), unit_id);
}

std::span<const PublicationRecord> Analysis::records_of(const std::string& unit_id) const {
  if (!has_unit(unit_id)) throw Error(ErrorCode::not_found, "unknown unit '" + unit_id + "'");
  return groups_.at(unit_id);
}

std::span<const PercentileScore> Analysis::scores_of(const std::string& unit_id) const {
  if (!has_unit(unit_id)) throw Error(ErrorCode::not_found, "unknown unit '" + unit_id + "'");
  return scores_.at(unit_id);
}

std::optional<double> Analysis::indicator(const std::string& unit_id,
                                          std::string_view name) const {
  const auto index = indicator_index(name);
  auto it = values_.find(unit_id);
  if (it == values_.end()) throw Error(ErrorCode::not_found, "unknown unit '" + unit_id + "'");
  return it->second[index];
}

IndicatorReport Analysis::report(std::map<std::string, std::string> extra_metadata) const {
  std::vector<ReportColumn> columns = {
      {"n_papers", 0, false, true}, {"total_citations", 0, false, true},
      {"i3", 2, true, false},       {"pr6", 0, true, false},
      {"ei", 0, false, false},      {"cpp", 2, false, false},
      {"jif", 3, false, false},     {"mncs", 3, false, false},
      {"rcr", 3, false, false}};

  const auto pr6 = RankClassScheme::pr6();
  std::vector<UnitIndicators> units;
  units.reserve(units_.size());
  for (const auto& unit : units_) {
    UnitIndicators u;
    u.unit_id = unit;
    u.values = values_.at(unit);
    u.significance.resize(4);
    const auto& scores = scores_.at(unit);
    if (!scores.empty()) {
      u.significance[2] = z_test_expectation(scores, options_.scheme, options_.test, unit);
      u.significance[3] = z_test_expectation(scores, pr6, options_.test, unit);
    }
    units.push_back(std::move(u));
  }

  std::map<std::string, std::string> metadata = std::move(extra_metadata);
  metadata["counting_rule"] = to_string(options_.rule);
  metadata["i3_scheme"] = options_.scheme.name();
  metadata["pr6_scheme"] = "PR6";
  metadata["ei_top_percent"] = format_number(options_.ei_top);
  metadata["alpha"] = format_number(options_.test.alpha);
  metadata["test_mode"] = to_string(options_.test.mode);
  metadata["census_year"] = std::to_string(corpus_.census_year);
  metadata["doc_type_control"] = options_.scopes.doc_type_control ? "on" : "off";
  metadata["scopes"] = options_.scopes.named_sets.empty()
                           ? std::string("per-venue")
                           : std::to_string(options_.scopes.named_sets.size()) + " named" +
                                 (options_.scopes.per_venue ? " + per-venue" : "");
  metadata["class_intervals"] = "closed below, open above; last class closed at 100";
  metadata["reference_sets"] = std::to_string(refsets_.sets.size());
  metadata["discarded_records"] = std::to_string(refsets_.discarded.size());

  auto report = build_report(std::move(columns), std::move(units), std::move(metadata));
  report.curves = curves({});
  return report;
}

SignificanceResult Analysis::compare(const std::string& unit_a,
                                     const std::string& unit_b) const {
  auto result = z_test_two_units(scores_of(unit_a), scores_of(unit_b), options_.scheme,
                                 options_.test, unit_a);
  result.reference = unit_b;
  return result;
}

CorrelationMatrix Analysis::correlate(const std::vector<std::string>& indicator_names) const {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  for (const auto& name : indicator_names) {
    const auto index = indicator_index(name);
    names.emplace_back(kIndicatorNames[index]);
    std::vector<double> column;
    column.reserve(units_.size());
    for (const auto& unit : units_) {
      const auto& v = values_.at(unit)[index];
      if (!v)
        throw Error(ErrorCode::undefined_indicator,
                    "indicator " + names.back() + " undefined for unit '" + unit + "'");
      column.push_back(*v);
    }
    columns.push_back(std::move(column));
  }
  return correlations(names, columns);
}

std::vector<UnitCurves> Analysis::curves(const std::vector<std::string>& unit_ids) const {
  const auto& ids = unit_ids.empty() ? units_ : unit_ids;
  std::vector<UnitCurves> out;
  out.reserve(ids.size());
  for (const auto& unit : ids)
    out.push_back({unit, export_citation_curve(records_of(unit)),
                   export_percentile_curve(scores_of(unit))});
  return out;
}

std::string Analysis::percentiles_csv() const {
  std::string out = "paper_id,unit_id,scope,pub_year,doc_type,value,rule\n";
  for (const auto& r : corpus_.records) {
    auto score = scored_.find(r.paper_id);
    auto key = refsets_.key_of(r.paper_id);
    if (score == scored_.end() || !key) continue;
    out += detail::csv_field(r.paper_id) + "," + detail::csv_field(r.unit_id) + "," +
           detail::csv_field(key->scope) + "," + std::to_string(key->pub_year) + "," +
           std::string(key->doc_type ? to_string(*key->doc_type) : "*") + "," +
           format_fixed(score->second.value, 6) + "," + std::string(to_string(options_.rule)) +
           "\n";
  }
  return out;
}

}  // namespace i3
