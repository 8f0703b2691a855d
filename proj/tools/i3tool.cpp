// Command-line front end. Talks to the library exclusively through the C API in i3/i3.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "i3/i3.h"

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusDeleter {
  void operator()(i3_corpus* c) const { i3_corpus_free(c); }
};
struct AnalysisDeleter {
  void operator()(i3_analysis* a) const { i3_analysis_free(a); }
};
struct StringDeleter {
  void operator()(char* s) const { i3_string_free(s); }
};
using CorpusPtr = std::unique_ptr<i3_corpus, CorpusDeleter>;
using AnalysisPtr = std::unique_ptr<i3_analysis, AnalysisDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

void check(i3_status status) {
  if (status != I3_OK)
    throw Failure(std::string(i3_status_string(status)) + ": " + i3_last_error());
}

std::string take(char* raw) {
  StringPtr owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure("cannot write '" + tmp.string() + "'");
    out << data;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Failure("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure("cannot move output into '" + path + "'");
  }
}

void emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") std::cout << data << std::flush;
  else write_atomic(path, data);
}

struct RunConfig {
  std::string input;
  std::string scopes;
  std::string rule = "mid";
  std::string scheme = "CONTINUOUS";
  std::string scheme_file;
  double alpha = 0.01;
  double ei_top = 10.0;
  std::string test = "mean-weight";
  bool no_doc_type_control = false;
  int census_year = 0;
  std::string delimiter = ",";
  std::size_t min_refset = 1;
  unsigned threads = 0;
  std::string format;
  std::string output;

  // Embedded in reports; excludes settings that do not affect content (threads, output).
  std::string metadata_json(const std::string& command) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["input"] = input;
    j["scopes"] = scopes.empty() ? "per-venue" : scopes;
    j["rule"] = rule;
    j["scheme"] = scheme_file.empty() ? scheme : "file:" + scheme_file;
    j["alpha"] = alpha;
    j["ei_top"] = ei_top;
    j["test"] = test;
    j["doc_type_control"] = !no_doc_type_control;
    j["census_year"] = census_year;
    j["delimiter"] = delimiter;
    j["min_refset"] = min_refset;
    j["format"] = format;
    nlohmann::ordered_json wrapper;
    wrapper["run_config"] = j.dump();
    return wrapper.dump();
  }
};

void add_analysis_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input,-i", cfg.input, "Publication records (CSV)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--scopes", cfg.scopes, "Named venue sets (JSON); default: per venue")
      ->check(CLI::ExistingFile);
  sub->add_option("--rule", cfg.rule, "Percentile counting rule")
      ->check(CLI::IsMember({"strict", "weak", "mid"}))
      ->capture_default_str();
  sub->add_option("--scheme", cfg.scheme, "PR6, EI10, EI1, CONTINUOUS or EI<x>")
      ->capture_default_str();
  sub->add_option("--scheme-file", cfg.scheme_file, "Custom rank classes (JSON)")
      ->check(CLI::ExistingFile);
  sub->add_option("--alpha", cfg.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--ei-top", cfg.ei_top, "Top percentage for the excellence indicator")
      ->capture_default_str();
  sub->add_option("--test", cfg.test, "z-test mode")
      ->check(CLI::IsMember({"mean-weight", "top-share"}))
      ->capture_default_str();
  sub->add_flag("--no-doctype-control", cfg.no_doc_type_control,
                "Pool document types within reference sets");
  sub->add_option("--census-year", cfg.census_year, "Citation census year (0: infer)");
  sub->add_option("--delimiter", cfg.delimiter, "Input field delimiter")->capture_default_str();
  sub->add_option("--min-refset", cfg.min_refset, "Drop reference sets below this size")
      ->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Worker threads (0: all processors)");
}

AnalysisPtr open_analysis(const RunConfig& cfg) {
  if (cfg.delimiter.size() != 1) throw Failure("--delimiter must be a single character");
  i3_load_options load;
  i3_load_options_init(&load);
  load.delimiter = cfg.delimiter[0];
  load.census_year = cfg.census_year;

  i3_corpus* raw_corpus = nullptr;
  check(i3_corpus_load(cfg.input.c_str(), &load, &raw_corpus));
  CorpusPtr corpus(raw_corpus);
  for (std::size_t i = 0; i < i3_corpus_warning_count(corpus.get()); ++i)
    std::cerr << "warning: " << i3_corpus_warning(corpus.get(), i) << "\n";

  const std::string scope_json = cfg.scopes.empty() ? std::string() : read_file(cfg.scopes);
  const std::string scheme_json =
      cfg.scheme_file.empty() ? std::string() : read_file(cfg.scheme_file);

  i3_analysis_options options;
  i3_analysis_options_init(&options);
  options.scope_json = cfg.scopes.empty() ? nullptr : scope_json.c_str();
  options.scheme_name = cfg.scheme.c_str();
  options.scheme_json = cfg.scheme_file.empty() ? nullptr : scheme_json.c_str();
  options.rule = cfg.rule == "strict" ? I3_RULE_STRICT
                 : cfg.rule == "weak" ? I3_RULE_WEAK
                                      : I3_RULE_MID;
  options.doc_type_control = cfg.no_doc_type_control ? 0 : 1;
  options.alpha = cfg.alpha;
  options.ei_top = cfg.ei_top;
  options.test_mode = cfg.test == "top-share" ? I3_TEST_TOP_SHARE : I3_TEST_MEAN_WEIGHT;
  options.min_refset_size = cfg.min_refset;
  options.threads = cfg.threads;

  i3_analysis* raw = nullptr;
  check(i3_analysis_create(corpus.get(), &options, &raw));
  AnalysisPtr analysis(raw);
  for (std::size_t i = 0; i < i3_analysis_warning_count(analysis.get()); ++i)
    std::cerr << "warning: " << i3_analysis_warning(analysis.get(), i) << "\n";
  return analysis;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percentile-based citation impact indicators (I3, PR6, EI) and baselines"};
  app.set_version_flag("--version", std::string(i3_version()));
  app.set_config("--config", "", "Read options from a TOML/INI file")->envname("I3_CONFIG");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;

  auto* compute = app.add_subcommand("compute", "Indicator report for every unit");
  add_analysis_options(compute, cfg);
  std::string percentiles_out;
  std::string compute_format = "text";
  compute->add_option("--format", compute_format, "text, csv, json or svg")
      ->capture_default_str();
  compute->add_option("--output,-o", cfg.output, "Report file (default: stdout)");
  compute->add_option("--percentiles", percentiles_out, "Also export per-paper percentiles");

  auto* compare = app.add_subcommand("compare", "z-test of one unit against another");
  add_analysis_options(compare, cfg);
  std::string unit_a, unit_b;
  compare->add_option("unit_a", unit_a, "First unit")->required();
  compare->add_option("unit_b", unit_b, "Second unit")->required();
  std::string compare_format = "text";
  compare->add_option("--format", compare_format, "text, csv or json")->capture_default_str();
  compare->add_option("--output,-o", cfg.output, "Output file (default: stdout)");

  auto* correlate = app.add_subcommand("correlate", "Pearson/Spearman matrix across units");
  add_analysis_options(correlate, cfg);
  std::string indicators;
  correlate->add_option("--indicators", indicators,
                        "Comma-separated: n_papers,total_citations,i3,pr6,ei,cpp,jif,mncs,rcr");
  std::string correlate_format = "text";
  correlate->add_option("--format", correlate_format, "text, csv or json")
      ->capture_default_str();
  correlate->add_option("--output,-o", cfg.output, "Output file (default: stdout)");

  auto* curves = app.add_subcommand("curves", "Citation and percentile curves per unit");
  add_analysis_options(curves, cfg);
  std::string units;
  curves->add_option("--units", units, "Comma-separated unit ids (default: all)");
  std::string curves_format = "csv";
  curves->add_option("--format", curves_format, "csv, json or svg")->capture_default_str();
  curves->add_option("--output,-o", cfg.output, "Output file (default: stdout)");

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic corpus CSV");
  std::string spec_path;
  simulate->add_option("--spec", spec_path, "Generator specification (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--output,-o", cfg.output, "Corpus file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto spec = read_file(spec_path);
      i3_corpus* raw = nullptr;
      check(i3_corpus_generate(spec.c_str(), &raw));
      CorpusPtr corpus(raw);
      char* csv = nullptr;
      check(i3_corpus_to_csv(corpus.get(), &csv));
      emit(cfg.output, take(csv));
      return 0;
    }

    if (compute->parsed()) cfg.format = compute_format;
    else if (compare->parsed()) cfg.format = compare_format;
    else if (correlate->parsed()) cfg.format = correlate_format;
    else cfg.format = curves_format;

    const auto analysis = open_analysis(cfg);
    char* out = nullptr;
    if (compute->parsed()) {
      check(i3_analysis_report(analysis.get(), cfg.format.c_str(),
                               cfg.metadata_json("compute").c_str(), &out));
      const auto report = take(out);
      std::string percentiles;
      if (!percentiles_out.empty()) {
        check(i3_analysis_percentiles_csv(analysis.get(), &out));
        percentiles = take(out);
      }
      emit(cfg.output, report);
      if (!percentiles_out.empty()) write_atomic(percentiles_out, percentiles);
    } else if (compare->parsed()) {
      check(i3_analysis_compare(analysis.get(), unit_a.c_str(), unit_b.c_str(),
                                cfg.format.c_str(), nullptr, nullptr, &out));
      emit(cfg.output, take(out));
    } else if (correlate->parsed()) {
      check(i3_analysis_correlate(analysis.get(), indicators.empty() ? nullptr : indicators.c_str(),
                                  cfg.format.c_str(), &out));
      emit(cfg.output, take(out));
    } else if (curves->parsed()) {
      check(i3_analysis_curves(analysis.get(), units.empty() ? nullptr : units.c_str(),
                               cfg.format.c_str(), &out));
      emit(cfg.output, take(out));
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
