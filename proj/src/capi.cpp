#include "i3/i3.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "i3/analysis.hpp"
#include "i3/synthgen.hpp"
#include "text_util.hpp"

struct i3_corpus {
  i3::Corpus corpus;
  i3::Diagnostics warnings;
};

struct i3_analysis {
  std::unique_ptr<i3::Analysis> analysis;
};

namespace {

thread_local std::string g_last_error;

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

i3_status status_of(i3::ErrorCode code) {
  switch (code) {
    case i3::ErrorCode::io: return I3_ERR_IO;
    case i3::ErrorCode::schema: return I3_ERR_SCHEMA;
    case i3::ErrorCode::validation: return I3_ERR_VALIDATION;
    case i3::ErrorCode::duplicate_key: return I3_ERR_DUPLICATE_KEY;
    case i3::ErrorCode::configuration: return I3_ERR_CONFIGURATION;
    case i3::ErrorCode::domain: return I3_ERR_DOMAIN;
    case i3::ErrorCode::undefined_indicator: return I3_ERR_UNDEFINED;
    case i3::ErrorCode::usage: return I3_ERR_USAGE;
    case i3::ErrorCode::not_found: return I3_ERR_NOT_FOUND;
  }
  return I3_ERR_INTERNAL;
}

template <typename F>
i3_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return I3_OK;
  } catch (const i3::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return I3_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return I3_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return I3_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return I3_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw InvalidArgument(what);
}

char* copy_out(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

i3::LoadOptions to_load_options(const i3_load_options* options) {
  i3::LoadOptions out;
  if (!options) return out;
  if (options->delimiter) out.delimiter = options->delimiter;
  out.min_year = options->min_year;
  out.max_year = options->max_year;
  if (options->census_year) out.census_year = options->census_year;
  return out;
}

std::vector<std::string> split_list(const char* list) {
  if (!list) return {};
  return i3::detail::split(list, ',');
}

const i3::Analysis& checked(const i3_analysis* analysis) {
  require(analysis && analysis->analysis, "null analysis handle");
  return *analysis->analysis;
}

}  // namespace

extern "C" {

const char* i3_version(void) { return "1.0.0"; }

const char* i3_last_error(void) { return g_last_error.c_str(); }

const char* i3_status_string(i3_status status) {
  switch (status) {
    case I3_OK: return "ok";
    case I3_ERR_IO: return "io error";
    case I3_ERR_SCHEMA: return "schema error";
    case I3_ERR_VALIDATION: return "validation error";
    case I3_ERR_DUPLICATE_KEY: return "duplicate key";
    case I3_ERR_CONFIGURATION: return "configuration error";
    case I3_ERR_DOMAIN: return "domain error";
    case I3_ERR_UNDEFINED: return "undefined indicator";
    case I3_ERR_USAGE: return "usage error";
    case I3_ERR_NOT_FOUND: return "not found";
    case I3_ERR_INVALID_ARGUMENT: return "invalid argument";
    case I3_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void i3_string_free(char* str) { std::free(str); }

void i3_load_options_init(i3_load_options* options) {
  if (!options) return;
  const i3::LoadOptions defaults;
  options->delimiter = defaults.delimiter;
  options->min_year = defaults.min_year;
  options->max_year = defaults.max_year;
  options->census_year = 0;
}

i3_status i3_corpus_load(const char* path, const i3_load_options* options, i3_corpus** out) {
  return guarded([&] {
    require(path && out, "i3_corpus_load: null argument");
    auto handle = std::make_unique<i3_corpus>();
    handle->corpus = i3::load_corpus(path, to_load_options(options), &handle->warnings);
    *out = handle.release();
  });
}

i3_status i3_corpus_parse(const char* csv_text, const i3_load_options* options,
                          i3_corpus** out) {
  return guarded([&] {
    require(csv_text && out, "i3_corpus_parse: null argument");
    auto handle = std::make_unique<i3_corpus>();
    handle->corpus = i3::parse_corpus(csv_text, to_load_options(options), &handle->warnings);
    *out = handle.release();
  });
}

i3_status i3_corpus_generate(const char* spec_json, i3_corpus** out) {
  return guarded([&] {
    require(spec_json && out, "i3_corpus_generate: null argument");
    auto handle = std::make_unique<i3_corpus>();
    handle->corpus = i3::generate(i3::GeneratorSpec::from_json(spec_json));
    *out = handle.release();
  });
}

size_t i3_corpus_size(const i3_corpus* corpus) {
  return corpus ? corpus->corpus.records.size() : 0;
}

int i3_corpus_census_year(const i3_corpus* corpus) {
  return corpus ? corpus->corpus.census_year : 0;
}

i3_status i3_corpus_to_csv(const i3_corpus* corpus, char** out) {
  return guarded([&] {
    require(corpus && out, "i3_corpus_to_csv: null argument");
    *out = copy_out(i3::write_corpus_csv(corpus->corpus));
  });
}

size_t i3_corpus_warning_count(const i3_corpus* corpus) {
  return corpus ? corpus->warnings.messages().size() : 0;
}

const char* i3_corpus_warning(const i3_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->warnings.messages().size()) return nullptr;
  return corpus->warnings.messages()[index].c_str();
}

void i3_corpus_free(i3_corpus* corpus) { delete corpus; }

void i3_analysis_options_init(i3_analysis_options* options) {
  if (!options) return;
  options->scope_json = nullptr;
  options->scheme_name = "CONTINUOUS";
  options->scheme_json = nullptr;
  options->rule = I3_RULE_MID;
  options->doc_type_control = 1;
  options->alpha = 0.01;
  options->ei_top = 10.0;
  options->test_mode = I3_TEST_MEAN_WEIGHT;
  options->min_refset_size = 1;
  options->warn_refset_size = 20;
  options->threads = 0;
}

i3_status i3_analysis_create(const i3_corpus* corpus, const i3_analysis_options* options,
                             i3_analysis** out) {
  return guarded([&] {
    require(corpus && out, "i3_analysis_create: null argument");
    i3_analysis_options defaults;
    i3_analysis_options_init(&defaults);
    const auto& o = options ? *options : defaults;

    i3::AnalysisOptions config;
    const bool control = o.doc_type_control != 0;
    config.scopes = o.scope_json ? i3::ScopeConfig::from_json(o.scope_json, control)
                                 : i3::ScopeConfig::per_venue_scopes(control);
    switch (o.rule) {
      case I3_RULE_STRICT: config.rule = i3::CountingRule::strict; break;
      case I3_RULE_WEAK: config.rule = i3::CountingRule::weak; break;
      case I3_RULE_MID: config.rule = i3::CountingRule::mid; break;
      default: throw i3::Error(i3::ErrorCode::usage, "unknown counting rule");
    }
    if (o.scheme_json)
      config.scheme = i3::RankClassScheme::from_json(o.scheme_json);
    else if (o.scheme_name)
      config.scheme = i3::RankClassScheme::by_name(o.scheme_name);
    config.ei_top = o.ei_top;
    config.test.alpha = o.alpha;
    config.test.mode = o.test_mode == I3_TEST_TOP_SHARE ? i3::TestMode::top_share
                                                        : i3::TestMode::mean_weight;
    config.refset.min_size = o.min_refset_size;
    config.refset.warn_below = o.warn_refset_size;
    config.threads = o.threads;

    auto handle = std::make_unique<i3_analysis>();
    handle->analysis = std::make_unique<i3::Analysis>(corpus->corpus, std::move(config));
    *out = handle.release();
  });
}

void i3_analysis_free(i3_analysis* analysis) { delete analysis; }

size_t i3_analysis_warning_count(const i3_analysis* analysis) {
  return analysis && analysis->analysis ? analysis->analysis->diagnostics().messages().size()
                                        : 0;
}

const char* i3_analysis_warning(const i3_analysis* analysis, size_t index) {
  if (index >= i3_analysis_warning_count(analysis)) return nullptr;
  return analysis->analysis->diagnostics().messages()[index].c_str();
}

size_t i3_analysis_unit_count(const i3_analysis* analysis) {
  return analysis && analysis->analysis ? analysis->analysis->units().size() : 0;
}

const char* i3_analysis_unit(const i3_analysis* analysis, size_t index) {
  if (index >= i3_analysis_unit_count(analysis)) return nullptr;
  return analysis->analysis->units()[index].c_str();
}

i3_status i3_analysis_indicator(const i3_analysis* analysis, const char* unit_id,
                                const char* indicator, double* out) {
  return guarded([&] {
    require(unit_id && indicator && out, "i3_analysis_indicator: null argument");
    auto value = checked(analysis).indicator(unit_id, indicator);
    if (!value)
      throw i3::Error(i3::ErrorCode::undefined_indicator,
                      std::string(indicator) + " undefined for unit '" + unit_id + "'");
    *out = *value;
  });
}

i3_status i3_analysis_report(const i3_analysis* analysis, const char* format,
                             const char* metadata_json, char** out) {
  return guarded([&] {
    require(format && out, "i3_analysis_report: null argument");
    const auto fmt = i3::parse_report_format(format);
    std::map<std::string, std::string> extra;
    if (metadata_json) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(metadata_json);
      } catch (const nlohmann::json::exception& e) {
        throw i3::Error(i3::ErrorCode::usage, std::string("report metadata: ") + e.what());
      }
      require(doc.is_object(), "report metadata must be a JSON object");
      for (const auto& [key, value] : doc.items())
        extra[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    *out = copy_out(i3::render(checked(analysis).report(std::move(extra)), fmt));
  });
}

i3_status i3_analysis_compare(const i3_analysis* analysis, const char* unit_a,
                              const char* unit_b, const char* format, double* z_out,
                              double* p_out, char** out) {
  return guarded([&] {
    require(unit_a && unit_b, "i3_analysis_compare: null unit");
    const auto result = checked(analysis).compare(unit_a, unit_b);
    if (z_out) *z_out = result.z;
    if (p_out) *p_out = result.p_two_sided;
    if (out) {
      const auto fmt = i3::parse_report_format(format ? format : "text");
      *out = copy_out(i3::render_significance(std::span(&result, 1), fmt));
    }
  });
}

i3_status i3_analysis_correlate(const i3_analysis* analysis, const char* indicators,
                                const char* format, char** out) {
  return guarded([&] {
    require(out, "i3_analysis_correlate: null output");
    auto names = split_list(indicators);
    if (names.empty()) names = {"cpp", "i3", "pr6", "n_papers", "total_citations"};
    const auto fmt = i3::parse_report_format(format ? format : "text");
    *out = copy_out(i3::render_correlations(checked(analysis).correlate(names), fmt));
  });
}

i3_status i3_analysis_curves(const i3_analysis* analysis, const char* units,
                             const char* format, char** out) {
  return guarded([&] {
    require(out, "i3_analysis_curves: null output");
    const auto fmt = i3::parse_report_format(format ? format : "csv");
    *out = copy_out(i3::render_curves(checked(analysis).curves(split_list(units)), fmt));
  });
}

i3_status i3_analysis_percentiles_csv(const i3_analysis* analysis, char** out) {
  return guarded([&] {
    require(out, "i3_analysis_percentiles_csv: null output");
    *out = copy_out(checked(analysis).percentiles_csv());
  });
}

}  // extern "C"
