#include "doctest.h"
#include "i3/analysis.hpp"
#include "i3/error.hpp"
#include "i3/synthgen.hpp"
#include "support.hpp"

using namespace i3;

namespace {

AnalysisOptions pr6_options() {
  AnalysisOptions o;
  o.scheme = RankClassScheme::pr6();
  return o;
}

}  // namespace

TEST_CASE("PI fixture class counts and indicators") {
  const Analysis a(load_corpus(I3_FIXTURE_PATH), pr6_options());
  CHECK(a.units() == std::vector<std::string>{"PI1", "PI2"});
  CHECK(*a.indicator("PI1", "i3") == 65.0);
  CHECK(*a.indicator("PI2", "i3") == 122.0);
  CHECK(*a.indicator("PI1", "total_citations") == 1632.0);
  CHECK(*a.indicator("PI2", "total_citations") == 1578.0);
  CHECK(std::abs(*a.indicator("PI1", "cpp") - 70.96) < 0.005);
  CHECK(std::abs(*a.indicator("PI2", "cpp") - 24.28) < 0.005);
  CHECK(*a.indicator("PI1", "ei") == 7.0);
  CHECK(class_counts(a.scores_of("PI1"), RankClassScheme::pr6()) ==
        std::vector<std::size_t>{7, 6, 3, 1, 3, 3});
  CHECK(class_counts(a.scores_of("PI2"), RankClassScheme::pr6()) ==
        std::vector<std::size_t>{35, 14, 10, 1, 5, 0});
  CHECK_FALSE(a.indicator("PI1", "jif").has_value());
  CHECK_THROWS_AS(a.indicator("PI3", "i3"), Error);
  CHECK_THROWS_AS(a.indicator("PI1", "h_index"), Error);

  const auto report = a.report();
  CHECK(report.rows[0].unit_id == "PI2");
  CHECK(report.metadata.at("counting_rule") == "mid");
  CHECK(report.metadata.at("i3_scheme") == "PR6");
  CHECK(report.curves.size() == 2);

  const auto z = a.compare("PI1", "PI2");
  CHECK(z.p_two_sided < 0.05);
  CHECK(z.reference == "PI2");
  CHECK(a.compare("PI1", "PI1").z == 0.0);
  CHECK_THROWS_AS(a.compare("PI1", "nobody"), Error);
  CHECK_THROWS_AS(a.correlate({"i3", "cpp"}), Error);  // only two units
}

TEST_CASE("thread count does not change results") {
  GeneratorSpec spec;
  spec.seed = 8;
  spec.n_units = 30;
  const auto corpus = generate(spec);
  auto one = pr6_options();
  one.threads = 1;
  auto many = one;
  many.threads = 6;
  const Analysis a(corpus, one), b(corpus, many);
  CHECK(render(a.report(), ReportFormat::csv) == render(b.report(), ReportFormat::csv));
  CHECK(a.percentiles_csv() == b.percentiles_csv());
}

TEST_CASE("venue units get a JIF and correlations run") {
  GeneratorSpec spec;
  spec.seed = 4;
  spec.n_units = 10;
  spec.units_are_venues = true;
  const Analysis a(generate(spec), pr6_options());
  for (const auto& u : a.units()) CHECK(a.indicator(u, "jif").has_value());
  const auto m = a.correlate({"i3", "pr6", "cpp", "jif"});
  CHECK(m.n == 10);
  CHECK(*m.spearman[0][1] == 1.0);  // same scheme in both columns
}

TEST_CASE("invalid options") {
  const auto corpus = load_corpus(I3_FIXTURE_PATH);
  auto o = pr6_options();
  o.ei_top = 0;
  CHECK_THROWS_AS(Analysis(corpus, o), Error);
  o = pr6_options();
  o.test.alpha = 1.5;
  CHECK_THROWS_AS(Analysis(corpus, o), Error);
}
