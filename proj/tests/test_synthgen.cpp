#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "i3/error.hpp"
#include "i3/synthgen.hpp"
#include "support.hpp"

using namespace i3;
using test::record;

TEST_CASE("constant distribution") {
  GeneratorSpec spec;
  spec.n_units = 1;
  spec.min_papers = spec.max_papers = 3;
  spec.distribution.kind = DistributionKind::constant;
  spec.distribution.value = 5;
  const auto c = generate(spec);
  REQUIRE(c.records.size() == 3);
  for (const auto& r : c.records) CHECK(r.citations == 5);
}

TEST_CASE("seed determinism") {
  GeneratorSpec spec;
  spec.seed = 42;
  spec.n_units = 12;
  CHECK(generate(spec) == generate(spec));
  CHECK(write_corpus_csv(generate(spec)) == write_corpus_csv(generate(spec)));
  auto other = spec;
  other.seed = 43;
  CHECK_FALSE(generate(other) == generate(spec));
}

TEST_CASE("generated corpora validate") {
  for (auto kind : {DistributionKind::lognormal, DistributionKind::power_law}) {
    GeneratorSpec spec;
    spec.n_units = 20;
    spec.distribution.kind = kind;
    spec.doc_type_mix = {{DocType::article, 3}, {DocType::review, 1}, {DocType::letter, 1}};
    const auto c = generate(spec);
    CHECK_NOTHROW(validate(c));
    CHECK(evaluated_units(c).size() == 20);
    LoadOptions o;
    o.census_year = c.census_year;
    CHECK(parse_corpus(write_corpus_csv(c), o) == c);
  }
}

TEST_CASE("power-law sample is right-skewed") {
  CitationDistribution d;
  d.kind = DistributionKind::power_law;
  d.alpha = 2.5;
  d.c_min = 1;
  SampleStream rng(2024);
  std::vector<double> x(10000);
  for (auto& v : x) v = static_cast<double>(rng.citations(d));
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0, m3 = 0;
  for (double v : x) {
    m2 += (v - mean) * (v - mean) / n;
    m3 += (v - mean) * (v - mean) * (v - mean) / n;
  }
  std::sort(x.begin(), x.end());
  const double median = (x[4999] + x[5000]) / 2.0;
  CHECK(m3 / std::pow(m2, 1.5) > 0.0);
  CHECK(median < mean);
  CHECK(x.front() >= 1.0);
}

TEST_CASE("uniform stream") {
  SampleStream a(1), b(1);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 1000; ++i) {
    const auto k = a.uniform_int(3, 5);
    CHECK(k >= 3);
    CHECK(k <= 5);
  }
}

TEST_CASE("invalid specs") {
  GeneratorSpec spec;
  spec.distribution.kind = DistributionKind::power_law;
  spec.distribution.alpha = 1.0;
  CHECK_THROWS_AS(generate(spec), Error);
  CHECK_THROWS_AS(GeneratorSpec::from_json(R"({"distribution":{"type":"lognormal","sigma":-1}})"),
                  Error);
  CHECK_THROWS_AS(GeneratorSpec::from_json(R"({"papers_per_unit":[5,2]})"), Error);
  CHECK_THROWS_AS(GeneratorSpec::from_json(R"({"distribution":{"type":"gamma"}})"), Error);
  CHECK_THROWS_AS(GeneratorSpec::from_json(R"({"doc_types":{"poster":1}})"), Error);
  CHECK_THROWS_AS(GeneratorSpec::from_json("[]"), Error);

  const auto parsed = GeneratorSpec::from_json(
      R"({"seed":9,"n_units":3,"papers_per_unit":4,"distribution":{"type":"constant","value":2}})");
  CHECK(parsed.seed == 9);
  CHECK(parsed.min_papers == 4);
  CHECK(parsed.max_papers == 4);
  CHECK(generate(parsed).records.size() == 12);
}

TEST_CASE("dilution") {
  Corpus c;
  c.records = {record("a", "U", "J", 2007, 100), record("b", "U", "J", 2007, 100),
               record("x", "", "J", 2007, 5), record("y", "", "J", 2007, 50)};
  const auto sets = build_reference_sets(c, ScopeConfig::per_venue_scopes());
  const std::vector<PublicationRecord> unit = {c.records[0], c.records[1]};

  const std::vector<std::int64_t> zero = {0};
  const auto r = dilute(unit, zero, sets, CountingRule::mid, RankClassScheme::pr6());
  CHECK(r.cpp_before == 100.0);
  CHECK(std::abs(r.cpp_after - 66.67) < 0.005);
  CHECK(r.i3_after >= r.i3_before);

  const std::vector<std::int64_t> high = {400};
  const auto up = dilute(unit, high, sets, CountingRule::mid, RankClassScheme::pr6());
  CHECK(up.cpp_after > up.cpp_before);

  const auto same = dilute(unit, {}, sets, CountingRule::mid, RankClassScheme::pr6());
  CHECK(same.cpp_after == same.cpp_before);
  CHECK(same.i3_after == same.i3_before);

  const std::vector<std::int64_t> negative = {-1};
  CHECK_THROWS_AS(dilute(unit, negative, sets, CountingRule::mid, RankClassScheme::pr6()), Error);
}

TEST_CASE("dilution experiment on a generated corpus") {
  GeneratorSpec spec;
  spec.seed = 3;
  spec.n_units = 5;
  spec.min_papers = 10;
  spec.max_papers = 20;
  const auto r = dilution_experiment(spec, "U01", 5);
  CHECK(r.cpp_after < r.cpp_before);
  CHECK(r.i3_after >= r.i3_before);
  const auto none = dilution_experiment(spec, "U01", 0);
  CHECK(none.i3_after == none.i3_before);
  CHECK_THROWS_AS(dilution_experiment(spec, "U99", 1), Error);
}
