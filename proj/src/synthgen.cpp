#include "i3/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "text_util.hpp"

namespace i3 {

namespace {

constexpr double kMaxCitations = 1e9;

std::int64_t clamp_count(double x) {
  if (!(x >= 0.0)) return 0;
  return static_cast<std::int64_t>(std::min(x, kMaxCitations));
}

std::string padded_id(char prefix, std::size_t value, std::size_t width) {
  auto digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

std::size_t digits_for(std::size_t n) { return std::max<std::size_t>(2, std::to_string(n).size()); }

}  // namespace

double SampleStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SampleStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::int64_t SampleStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const double span = static_cast<double>(hi - lo + 1);
  return lo + std::min(static_cast<std::int64_t>(uniform() * span), hi - lo);
}

std::int64_t SampleStream::citations(const CitationDistribution& d) {
  switch (d.kind) {
    case DistributionKind::constant: return d.value;
    case DistributionKind::lognormal:
      return clamp_count(std::round(std::exp(d.mu + d.sigma * normal())));
    case DistributionKind::power_law: {
      const double u = uniform();
      const double x = (static_cast<double>(d.c_min) - 0.5) *
                           std::pow(1.0 - u, -1.0 / (d.alpha - 1.0)) +
                       0.5;
      return clamp_count(std::floor(x));
    }
  }
  return 0;
}

void GeneratorSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::configuration, what); };
  if (n_units < 1) fail("n_units must be >= 1");
  if (min_papers < 0 || max_papers < min_papers)
    fail("papers_per_unit must satisfy 0 <= min <= max");
  if (!units_are_venues && n_venues < 1) fail("n_venues must be >= 1");
  if (years.empty()) fail("years must not be empty");
  for (int y : years)
    if (y < 1900 || y > 2100) fail("year " + std::to_string(y) + " outside 1900-2100");
  double mix = 0.0;
  for (const auto& [type, weight] : doc_type_mix) {
    if (!(weight >= 0.0)) fail("doc_type weights must be non-negative");
    mix += weight;
  }
  if (!(mix > 0.0)) fail("doc_type weights must have a positive sum");
  switch (distribution.kind) {
    case DistributionKind::lognormal:
      if (!(distribution.sigma >= 0.0) || !std::isfinite(distribution.mu))
        fail("lognormal needs finite mu and sigma >= 0");
      break;
    case DistributionKind::power_law:
      if (!(distribution.alpha > 1.0)) fail("power law needs alpha > 1");
      if (distribution.c_min < 1) fail("power law needs c_min >= 1");
      break;
    case DistributionKind::constant:
      if (distribution.value < 0) fail("constant citations must be >= 0");
      break;
  }
}

GeneratorSpec GeneratorSpec::from_json(std::string_view json_text) {
  GeneratorSpec spec;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) throw Error(ErrorCode::configuration, "generator spec must be an object");
    spec.seed = doc.value("seed", spec.seed);
    spec.n_units = doc.value("n_units", spec.n_units);
    if (doc.contains("papers_per_unit")) {
      const auto& p = doc.at("papers_per_unit");
      if (p.is_array() && p.size() == 2) {
        spec.min_papers = p.at(0).get<int>();
        spec.max_papers = p.at(1).get<int>();
      } else {
        spec.min_papers = spec.max_papers = p.get<int>();
      }
    }
    spec.n_venues = doc.value("n_venues", spec.n_venues);
    spec.units_are_venues = doc.value("units_are_venues", spec.units_are_venues);
    if (doc.contains("years")) spec.years = doc.at("years").get<std::vector<int>>();
    spec.census_year = doc.value("census_year", spec.census_year);
    if (doc.contains("doc_types")) {
      spec.doc_type_mix.clear();
      for (const auto& [name, weight] : doc.at("doc_types").items()) {
        bool known = false;
        const auto type = parse_doc_type(name, &known);
        if (!known) throw Error(ErrorCode::configuration, "unknown doc_type '" + name + "'");
        spec.doc_type_mix[type] = weight.get<double>();
      }
    }
    if (doc.contains("distribution")) {
      const auto& d = doc.at("distribution");
      const auto type = detail::lower(d.at("type").get<std::string>());
      auto& dist = spec.distribution;
      if (type == "lognormal") {
        dist.kind = DistributionKind::lognormal;
        dist.mu = d.value("mu", dist.mu);
        dist.sigma = d.value("sigma", dist.sigma);
      } else if (type == "power_law" || type == "power-law" || type == "powerlaw") {
        dist.kind = DistributionKind::power_law;
        dist.alpha = d.value("alpha", dist.alpha);
        dist.c_min = d.value("c_min", dist.c_min);
      } else if (type == "constant") {
        dist.kind = DistributionKind::constant;
        dist.value = d.at("value").get<std::int64_t>();
      } else {
        throw Error(ErrorCode::configuration, "unknown distribution type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::configuration, std::string("generator spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

Corpus generate(const GeneratorSpec& spec) {
  spec.validate();
  SampleStream rng(spec.seed);

  std::vector<std::pair<DocType, double>> mix(spec.doc_type_mix.begin(), spec.doc_type_mix.end());
  double mix_total = 0.0;
  for (const auto& [type, w] : mix) mix_total += w;

  const auto units = static_cast<std::size_t>(spec.n_units);
  const auto unit_width = digits_for(units);
  const auto venue_width = digits_for(static_cast<std::size_t>(spec.n_venues));
  const auto paper_width =
      std::max<std::size_t>(6, digits_for(units * static_cast<std::size_t>(spec.max_papers)));

  Corpus corpus;
  corpus.census_year = spec.census_year;
  std::size_t next_paper = 1;
  for (std::size_t u = 1; u <= units; ++u) {
    const auto unit_id = padded_id('U', u, unit_width);
    const auto n = rng.uniform_int(spec.min_papers, spec.max_papers);
    for (std::int64_t i = 0; i < n; ++i) {
      PublicationRecord r;
      r.paper_id = padded_id('P', next_paper++, paper_width);
      r.unit_id = unit_id;
      if (spec.units_are_venues) {
        r.venue_id = unit_id;
      } else {
        const auto v = rng.uniform_int(1, spec.n_venues);
        r.venue_id = padded_id('V', static_cast<std::size_t>(v), venue_width);
      }
      r.pub_year = spec.years[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(spec.years.size()) - 1))];
      double pick = rng.uniform() * mix_total;
      r.doc_type = mix.back().first;
      for (const auto& [type, w] : mix) {
        if (pick < w) {
          r.doc_type = type;
          break;
        }
        pick -= w;
      }
      r.citations = rng.citations(spec.distribution);
      corpus.records.push_back(std::move(r));
    }
  }
  return corpus;
}

DilutionResult dilute(std::span<const PublicationRecord> unit_records,
                      std::span<const std::int64_t> added_citations,
                      const ReferenceSets& refsets, CountingRule rule,
                      const RankClassScheme& scheme) {
  if (unit_records.empty()) throw Error(ErrorCode::domain, "dilution needs a non-empty unit");

  auto score_in = [&](const std::vector<PublicationRecord>& set, std::int64_t c,
                      std::size_t extra) {
    std::size_t below = 0, equal = extra;
    for (const auto& r : set) {
      if (r.citations < c) ++below;
      else if (r.citations == c) ++equal;
    }
    return percentile_value(below, equal, set.size() + extra, rule);
  };

  const PublicationRecord* lowest = &unit_records.front();
  std::vector<PercentileScore> scores;
  for (const auto& r : unit_records) {
    const auto* set = refsets.find_set_of(r.paper_id);
    if (!set)
      throw Error(ErrorCode::domain, "paper " + r.paper_id + " has no reference set");
    scores.push_back({r.paper_id, score_in(*set, r.citations, 0), rule, set->size()});
    if (r.citations < lowest->citations) lowest = &r;
  }

  DilutionResult out;
  out.cpp_before = cpp(unit_records).value;
  out.i3_before = i3(scores, scheme).value;

  const auto& template_set = *refsets.find_set_of(lowest->paper_id);
  std::int64_t total = total_citations(unit_records).value;
  for (std::size_t i = 0; i < added_citations.size(); ++i) {
    const auto c = added_citations[i];
    if (c < 0) throw Error(ErrorCode::domain, "added papers need non-negative citations");
    total += c;
    scores.push_back({"added-" + std::to_string(i + 1), score_in(template_set, c, 1), rule,
                      template_set.size() + 1});
  }
  out.cpp_after = static_cast<double>(total) /
                  static_cast<double>(unit_records.size() + added_citations.size());
  out.i3_after = i3(scores, scheme).value;
  return out;
}

DilutionResult dilution_experiment(const GeneratorSpec& spec, const std::string& base_unit,
                                   std::size_t added_low_cited, CountingRule rule,
                                   const RankClassScheme& scheme) {
  const auto corpus = generate(spec);
  const auto groups = group_by_unit(corpus);
  auto it = groups.find(base_unit);
  if (it == groups.end() || it->second.empty())
    throw Error(ErrorCode::not_found, "unit '" + base_unit + "' not in generated corpus");
  const auto refsets = build_reference_sets(corpus, ScopeConfig::per_venue_scopes());
  if (added_low_cited > 0 && cpp(it->second).value <= 0.0)
    throw Error(ErrorCode::domain, "unit '" + base_unit +
                                       "' has c/p 0; no paper can be cited below it");
  const std::vector<std::int64_t> added(added_low_cited, 0);
  return dilute(it->second, added, refsets, rule, scheme);
}

}  // namespace i3
