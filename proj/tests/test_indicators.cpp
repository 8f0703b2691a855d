#include <cmath>
#include <random>

#include "doctest.h"
#include "i3/error.hpp"
#include "i3/indicators.hpp"
#include "support.hpp"

using namespace i3;
using test::record;
using test::scores;

namespace {

// Counts listed top class first; schemes store classes bottom-up.
std::vector<std::size_t> bottom_up(std::vector<std::size_t> top_down) {
  return {top_down.rbegin(), top_down.rend()};
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("PR6 class boundaries") {
  const auto pr6 = RankClassScheme::pr6();
  CHECK(pr6.class_index(99.5) == 5);
  CHECK(pr6.weight(99.5) == 6);
  CHECK(pr6.weight(50.0) == 2);
  CHECK(pr6.weight(89.999) == 3);
  CHECK(pr6.weight(0.0) == 1);
  CHECK(pr6.weight(100.0) == 6);
  CHECK(pr6.weight(99.0) == 6);
  CHECK(pr6.weight(49.9999) == 1);
  CHECK(classify({"p", 95.0, CountingRule::mid, 10}, pr6).weight == 5);
}

TEST_CASE("scheme construction") {
  CHECK(RankClassScheme::by_name("pr6").name() == "PR6");
  CHECK(RankClassScheme::by_name("EI10").weight(90.0) == 1);
  CHECK(RankClassScheme::by_name("EI10").weight(89.99) == 0);
  CHECK(RankClassScheme::by_name("EI1").weight(98.99) == 0);
  CHECK(RankClassScheme::by_name("EI2.5").weight(97.5) == 1);
  CHECK(RankClassScheme::by_name("continuous").is_continuous());
  CHECK(code_of([] { RankClassScheme::by_name("PR7"); }) == ErrorCode::usage);
  CHECK(code_of([] { RankClassScheme::excellence(0); }) == ErrorCode::domain);
  CHECK(code_of([] { RankClassScheme::excellence(100); }) == ErrorCode::domain);

  CHECK(code_of([] { RankClassScheme("gap", {{0, 40, 1, ""}, {50, 100, 2, ""}}); }) ==
        ErrorCode::configuration);
  CHECK(code_of([] { RankClassScheme("short", {{0, 90, 1, ""}}); }) == ErrorCode::configuration);
  CHECK(code_of([] { RankClassScheme("none", {}); }) == ErrorCode::configuration);
  CHECK(code_of([] { RankClassScheme::from_json("{\"name\":\"x\"}"); }) ==
        ErrorCode::configuration);

  const auto custom = RankClassScheme::from_json(
      R"({"name":"two","classes":[{"lower":0,"upper":90,"weight":0},{"lower":90,"upper":100,"weight":1}]})");
  CHECK(custom.name() == "two");
  CHECK(custom.classes().size() == 2);
  const auto bare = RankClassScheme::from_json(
      R"([{"lower":0,"upper":50,"weight":-1},{"lower":50,"upper":100,"weight":1}])");
  CHECK_FALSE(bare.has_nonnegative_weights());
  CHECK(RankClassScheme::pr6().has_nonnegative_weights());
}

TEST_CASE("I3 from PI class counts") {
  const auto pr6 = RankClassScheme::pr6();
  const auto pi1 = bottom_up({3, 3, 1, 3, 6, 7});
  const auto pi2 = bottom_up({0, 5, 1, 10, 14, 35});
  CHECK(i3_from_counts(pi1, pr6) == 65.0);
  CHECK(i3_from_counts(pi2, pr6) == 122.0);
  CHECK(code_of([&] { i3_from_counts(std::vector<std::size_t>{1, 2}, pr6); }) ==
        ErrorCode::domain);
}

TEST_CASE("I3 from scores") {
  CHECK(i3::i3(scores({}), RankClassScheme::pr6()).value == 0.0);
  CHECK(i3::i3(scores({}), RankClassScheme::continuous()).value == 0.0);
  CHECK(i3::i3(scores({60, 60, 20, 80, 10}), RankClassScheme::continuous()).value == 230.0);
  const auto v = i3::i3(scores({99.5, 50, 10}), RankClassScheme::pr6(), "U");
  CHECK(v.value == 9.0);
  CHECK(v.unit_id == "U");
  CHECK(v.n_papers == 3);
  CHECK(v.scheme_name == "PR6");
  CHECK(class_counts(scores({99.5, 50, 10, 12}), RankClassScheme::pr6()) ==
        std::vector<std::size_t>{2, 1, 0, 0, 0, 1});
}

TEST_CASE("excellence indicator") {
  CHECK(excellence_indicator(scores({99.5, 95, 50}), 10).value == 2);
  // PI1: 3 papers in the top-1% and 3 in 95-99%
  std::vector<double> pi1;
  for (double v : {99.5, 99.5, 99.5, 97.5, 97.5, 97.5, 92.5, 82.5, 82.5, 82.5}) pi1.push_back(v);
  for (int i = 0; i < 6; ++i) pi1.push_back(62.5);
  for (int i = 0; i < 7; ++i) pi1.push_back(25.5);
  CHECK(excellence_indicator(scores(pi1), 5).value == 6);
  CHECK(i3::i3(scores(pi1), RankClassScheme::pr6()).value == 65);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(rng() % 30);
    for (auto& x : v) x = trial % 2 ? u(rng) : std::round(u(rng));
    for (double x : {10.0, 1.0, 5.0, 25.0})
      CHECK(excellence_indicator(scores(v), x).value ==
            i3::i3(scores(v), RankClassScheme::excellence(x)).value);
  }
}

TEST_CASE("citation totals and c/p") {
  std::vector<PublicationRecord> pi2;
  for (int i = 0; i < 65; ++i) pi2.push_back(record("p" + std::to_string(i), "PI2", "J", 2007, i < 18 ? 25 : 24));
  CHECK(total_citations(pi2).value == 1578);
  CHECK(std::abs(cpp(pi2).value - 24.28) < 0.005);

  std::vector<PublicationRecord> pi1;
  for (int i = 0; i < 23; ++i) pi1.push_back(record("q" + std::to_string(i), "PI1", "J", 2007, i < 22 ? 71 : 70));
  CHECK(total_citations(pi1).value == 1632);
  CHECK(std::abs(cpp(pi1).value - 70.96) < 0.005);

  CHECK(total_citations({}).value == 0);
  CHECK(code_of([] { cpp({}); }) == ErrorCode::undefined_indicator);
  const std::vector<PublicationRecord> zero = {record("z", "U", "J", 2007, 0)};
  CHECK(cpp(zero).value == 0.0);

  std::vector<PublicationRecord> both = pi1;
  both.insert(both.end(), pi2.begin(), pi2.end());
  CHECK(total_citations(both).value == 1632 + 1578);
}

TEST_CASE("journal impact factor") {
  Corpus c;
  c.census_year = 2009;
  c.records = {record("a", "", "J", 2007, 3), record("b", "", "J", 2008, 4, DocType::review),
               record("c", "", "J", 2008, 2, DocType::letter), record("d", "", "J", 2007, 1),
               record("e", "", "J", 2008, 50, DocType::other),
               record("f", "", "J", 2006, 50), record("g", "", "K", 2008, 50),
               record("a", "X", "J", 2007, 3)};
  CHECK(jif(c, "J", 2009).value == 2.5);
  CHECK(jif(c, "J", 2009).n_papers == 4);
  CHECK(code_of([&] { jif(c, "J", 2010); }) == ErrorCode::domain);
  CHECK(code_of([&] { jif(c, "Z", 2009); }) == ErrorCode::undefined_indicator);

  Corpus uncited;
  uncited.census_year = 2009;
  uncited.records = {record("a", "", "J", 2008, 0)};
  CHECK(jif(uncited, "J", 2009).value == 0.0);
}

TEST_CASE("relative citation rate") {
  Corpus c;
  c.records = {record("u", "U", "J", 2007, 4), record("b", "", "J", 2007, 0)};
  auto sets = build_reference_sets(c, ScopeConfig::per_venue_scopes());
  const std::vector<PublicationRecord> unit = {c.records[0]};
  CHECK(rcr(unit, sets).value == 2.0);
  CHECK(rcr(c.records, sets).value == doctest::Approx(1.0));

  Corpus zero;
  zero.records = {record("u", "U", "J", 2007, 0), record("b", "", "J", 2007, 6)};
  sets = build_reference_sets(zero, ScopeConfig::per_venue_scopes());
  CHECK(rcr(std::vector<PublicationRecord>{zero.records[0]}, sets).value == 0.0);
  CHECK(code_of([&] { rcr({}, sets); }) == ErrorCode::undefined_indicator);
}

TEST_CASE("mean normalized citation score") {
  Corpus c;
  c.records = {record("a", "U", "J", 2007, 1), record("x", "", "J", 2007, 3),
               record("b", "U", "K", 2007, 3), record("y", "", "K", 2007, 1)};
  auto sets = build_reference_sets(c, ScopeConfig::per_venue_scopes());
  const std::vector<PublicationRecord> unit = {c.records[0], c.records[2]};
  CHECK(mncs(unit, sets).value == 1.0);  // 0.5 and 1.5

  Corpus single;
  single.records = {record("a", "U", "J", 2007, 6), record("x", "", "J", 2007, 0),
                    record("y", "", "J", 2007, 0)};
  sets = build_reference_sets(single, ScopeConfig::per_venue_scopes());
  CHECK(mncs(std::vector<PublicationRecord>{single.records[0]}, sets).value == 3.0);

  Corpus at_mean;
  at_mean.records = {record("a", "U", "J", 2007, 5), record("b", "U", "K", 2008, 2)};
  sets = build_reference_sets(at_mean, ScopeConfig::per_venue_scopes());
  CHECK(mncs(at_mean.records, sets).value == 1.0);

  Corpus zero;
  zero.records = {record("a", "U", "J", 2007, 0), record("b", "U", "K", 2007, 4)};
  sets = build_reference_sets(zero, ScopeConfig::per_venue_scopes());
  Diagnostics d;
  CHECK(mncs(zero.records, sets, "U", &d).value == 1.0);
  CHECK(d.messages().size() == 1);
  CHECK(code_of([&] { mncs(std::vector<PublicationRecord>{zero.records[0]}, sets); }) ==
        ErrorCode::undefined_indicator);
}
