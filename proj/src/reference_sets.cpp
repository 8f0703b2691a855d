#include "i3/reference_sets.hpp"

#include <algorithm>
#include <thread>

#include <nlohmann/json.hpp>

#include "text_util.hpp"

namespace i3 {

std::string_view to_string(CountingRule rule) {
  switch (rule) {
    case CountingRule::strict: return "strict";
    case CountingRule::weak: return "weak";
    case CountingRule::mid: return "mid";
  }
  return "mid";
}

CountingRule parse_counting_rule(std::string_view text) {
  const auto t = detail::lower(detail::trim(text));
  if (t == "strict") return CountingRule::strict;
  if (t == "weak") return CountingRule::weak;
  if (t == "mid") return CountingRule::mid;
  throw Error(ErrorCode::usage, "unknown counting rule '" + std::string(text) +
                                    "' (expected strict, weak or mid)");
}

ScopeConfig ScopeConfig::per_venue_scopes(bool doc_type_control) {
  ScopeConfig config;
  config.per_venue = true;
  config.doc_type_control = doc_type_control;
  return config;
}

ScopeConfig ScopeConfig::from_json(std::string_view json_text, bool doc_type_control) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::configuration, std::string("scope config: ") + e.what());
  }
  if (!doc.is_object())
    throw Error(ErrorCode::configuration, "scope config must be an object of venue lists");
  ScopeConfig config;
  config.doc_type_control = doc_type_control;
  for (const auto& [name, venues] : doc.items()) {
    if (!venues.is_array())
      throw Error(ErrorCode::configuration, "scope '" + name + "' must be an array");
    auto& list = config.named_sets[name];
    for (const auto& v : venues) {
      if (!v.is_string())
        throw Error(ErrorCode::configuration, "scope '" + name + "' has a non-string venue");
      list.push_back(v.get<std::string>());
    }
  }
  if (config.named_sets.empty())
    throw Error(ErrorCode::configuration, "scope config defines no scopes");
  return config;
}

std::string describe(const ReferenceSetKey& key) {
  std::string out = key.scope + "/" + std::to_string(key.pub_year);
  out += "/";
  out += key.doc_type ? to_string(*key.doc_type) : std::string_view("*");
  return out;
}

const std::vector<PublicationRecord>* ReferenceSets::find_set_of(
    const std::string& paper_id) const {
  auto it = membership.find(paper_id);
  if (it == membership.end()) return nullptr;
  auto set = sets.find(it->second);
  return set == sets.end() ? nullptr : &set->second;
}

std::optional<ReferenceSetKey> ReferenceSets::key_of(const std::string& paper_id) const {
  auto it = membership.find(paper_id);
  if (it == membership.end()) return std::nullopt;
  return it->second;
}

ReferenceSets build_reference_sets(const Corpus& corpus, const ScopeConfig& scopes,
                                   const ReferenceSetOptions& options,
                                   Diagnostics* diagnostics) {
  if (scopes.named_sets.empty() && !scopes.per_venue)
    throw Error(ErrorCode::configuration, "empty scope configuration");

  std::map<std::string, std::string> venue_scope;
  for (const auto& [name, venues] : scopes.named_sets) {
    if (venues.empty())
      throw Error(ErrorCode::configuration, "scope '" + name + "' lists no venues");
    for (const auto& venue : venues) {
      auto [it, inserted] = venue_scope.emplace(venue, name);
      if (!inserted && it->second != name)
        throw Error(ErrorCode::configuration, "venue '" + venue + "' appears in scopes '" +
                                                  it->second + "' and '" + name + "'");
    }
  }

  ReferenceSets result;
  for (const auto& record : corpus.records) {
    if (result.membership.count(record.paper_id)) continue;
    std::string scope;
    if (auto it = venue_scope.find(record.venue_id); it != venue_scope.end())
      scope = it->second;
    else if (scopes.per_venue)
      scope = record.venue_id;
    else {
      result.discarded.push_back(record);
      continue;
    }
    ReferenceSetKey key{std::move(scope), record.pub_year,
                        scopes.doc_type_control ? std::optional(record.doc_type)
                                                : std::nullopt};
    result.membership.emplace(record.paper_id, key);
    result.sets[std::move(key)].push_back(record);
  }

  std::size_t small = 0;
  std::size_t smallest = 0;
  for (auto it = result.sets.begin(); it != result.sets.end();) {
    const auto size = it->second.size();
    if (size < options.min_size) {
      if (diagnostics)
        diagnostics->warn("reference set " + describe(it->first) + " has " +
                          std::to_string(size) + " papers (minimum " +
                          std::to_string(options.min_size) + "); discarded");
      for (auto& r : it->second) {
        result.membership.erase(r.paper_id);
        result.discarded.push_back(std::move(r));
      }
      it = result.sets.erase(it);
      continue;
    }
    if (size < options.warn_below) {
      smallest = small == 0 ? size : std::min(smallest, size);
      ++small;
    }
    ++it;
  }
  if (diagnostics && small > 0)
    diagnostics->warn(std::to_string(small) + " reference set(s) smaller than " +
                      std::to_string(options.warn_below) + " papers (smallest " +
                      std::to_string(smallest) + ")");
  if (diagnostics && !result.discarded.empty())
    diagnostics->warn(std::to_string(result.discarded.size()) +
                      " record(s) outside every reference set");
  return result;
}

double percentile_value(std::size_t below, std::size_t equal, std::size_t total,
                        CountingRule rule) {
  if (total == 0) throw Error(ErrorCode::domain, "empty reference set");
  const double l = static_cast<double>(below);
  const double t = static_cast<double>(equal);
  const double n = static_cast<double>(total);
  switch (rule) {
    case CountingRule::strict: return 100.0 * l / n;
    case CountingRule::weak: return 100.0 * (l + t) / n;
    case CountingRule::mid: return 100.0 * (l + t / 2.0) / n;
  }
  return 0.0;
}

std::vector<PercentileScore> percentile_scores(std::span<const PublicationRecord> refset,
                                               CountingRule rule) {
  if (refset.empty()) throw Error(ErrorCode::domain, "empty reference set");
  std::vector<std::int64_t> sorted;
  sorted.reserve(refset.size());
  for (const auto& r : refset) sorted.push_back(r.citations);
  std::sort(sorted.begin(), sorted.end());

  std::vector<PercentileScore> scores;
  scores.reserve(refset.size());
  for (const auto& r : refset) {
    auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), r.citations);
    const auto below = static_cast<std::size_t>(lo - sorted.begin());
    const auto equal = static_cast<std::size_t>(hi - lo);
    scores.push_back(PercentileScore{r.paper_id,
                                     percentile_value(below, equal, refset.size(), rule), rule,
                                     refset.size()});
  }
  return scores;
}

std::map<std::string, PercentileScore> score_all(const ReferenceSets& refsets,
                                                 CountingRule rule, unsigned threads) {
  std::vector<const std::vector<PublicationRecord>*> sets;
  sets.reserve(refsets.sets.size());
  for (const auto& [key, records] : refsets.sets) sets.push_back(&records);

  std::vector<std::vector<PercentileScore>> results(sets.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sets.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < sets.size(); ++i) results[i] = percentile_scores(*sets[i], rule);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sets.size(); i += workers)
          results[i] = percentile_scores(*sets[i], rule);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::map<std::string, PercentileScore> scored;
  for (auto& batch : results)
    for (auto& score : batch) {
      auto id = score.paper_id;
      scored.emplace(std::move(id), std::move(score));
    }
  return scored;
}

UnitScores unit_percentiles(const Corpus& corpus, const ReferenceSets& refsets,
                            const std::map<std::string, PercentileScore>& scored,
                            Diagnostics* diagnostics) {
  UnitScores units;
  for (const auto& record : corpus.records) {
    if (record.unit_id.empty()) continue;
    auto& list = units[record.unit_id];
    auto it = scored.find(record.paper_id);
    if (it == scored.end() || !refsets.membership.count(record.paper_id)) {
      if (diagnostics)
        diagnostics->warn("unit " + record.unit_id + ": paper " + record.paper_id +
                          " has no reference set; excluded");
      continue;
    }
    list.push_back(it->second);
  }
  for (auto& [unit, list] : units) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.value != b.value) return a.value > b.value;
      return a.paper_id < b.paper_id;
    });
  }
  return units;
}

UnitScores unit_percentiles(const Corpus& corpus, const ReferenceSets& refsets,
                            CountingRule rule, Diagnostics* diagnostics, unsigned threads) {
  return unit_percentiles(corpus, refsets, score_all(refsets, rule, threads), diagnostics);
}

}  // namespace i3
