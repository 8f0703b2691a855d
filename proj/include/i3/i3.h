/*
 * C interface to the citation-impact indicator library.
 *
 * Objects are opaque handles created by the _create/_load functions and released by the
 * matching _free function. Every fallible call returns an i3_status; on failure the
 * message is available from i3_last_error() until the next call on the same thread.
 * Strings returned through `char** out` are owned by the caller and released with
 * i3_string_free().
 */
#ifndef I3_I3_H
#define I3_I3_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(I3_BUILDING_LIBRARY)
#    define I3_API __declspec(dllexport)
#  else
#    define I3_API __declspec(dllimport)
#  endif
#else
#  define I3_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum i3_status {
  I3_OK = 0,
  I3_ERR_IO = 1,
  I3_ERR_SCHEMA = 2,
  I3_ERR_VALIDATION = 3,
  I3_ERR_DUPLICATE_KEY = 4,
  I3_ERR_CONFIGURATION = 5,
  I3_ERR_DOMAIN = 6,
  I3_ERR_UNDEFINED = 7,
  I3_ERR_USAGE = 8,
  I3_ERR_NOT_FOUND = 9,
  I3_ERR_INVALID_ARGUMENT = 10,
  I3_ERR_INTERNAL = 11
} i3_status;

typedef enum i3_counting_rule {
  I3_RULE_STRICT = 0,
  I3_RULE_WEAK = 1,
  I3_RULE_MID = 2
} i3_counting_rule;

typedef enum i3_test_mode {
  I3_TEST_MEAN_WEIGHT = 0,
  I3_TEST_TOP_SHARE = 1
} i3_test_mode;

typedef struct i3_corpus i3_corpus;
typedef struct i3_analysis i3_analysis;

typedef struct i3_load_options {
  char delimiter;
  int min_year;
  int max_year;
  int census_year; /* 0: one past the latest publication year */
} i3_load_options;

typedef struct i3_analysis_options {
  const char* scope_json;  /* NULL: every venue is its own scope */
  const char* scheme_name; /* PR6, EI10, EI1, CONTINUOUS, EI<x>; ignored if scheme_json set */
  const char* scheme_json; /* custom class list */
  i3_counting_rule rule;
  int doc_type_control; /* nonzero: reference sets split by document type */
  double alpha;
  double ei_top;
  i3_test_mode test_mode;
  size_t min_refset_size;
  size_t warn_refset_size;
  unsigned threads; /* 0: hardware concurrency */
} i3_analysis_options;

I3_API const char* i3_version(void);
I3_API const char* i3_last_error(void);
I3_API const char* i3_status_string(i3_status status);
I3_API void i3_string_free(char* str);

I3_API void i3_load_options_init(i3_load_options* options);
I3_API i3_status i3_corpus_load(const char* path, const i3_load_options* options,
                                i3_corpus** out);
I3_API i3_status i3_corpus_parse(const char* csv_text, const i3_load_options* options,
                                 i3_corpus** out);
/* Generates a synthetic corpus from a JSON generator specification. */
I3_API i3_status i3_corpus_generate(const char* spec_json, i3_corpus** out);
I3_API size_t i3_corpus_size(const i3_corpus* corpus);
I3_API int i3_corpus_census_year(const i3_corpus* corpus);
I3_API i3_status i3_corpus_to_csv(const i3_corpus* corpus, char** out);
I3_API size_t i3_corpus_warning_count(const i3_corpus* corpus);
I3_API const char* i3_corpus_warning(const i3_corpus* corpus, size_t index);
I3_API void i3_corpus_free(i3_corpus* corpus);

I3_API void i3_analysis_options_init(i3_analysis_options* options);
/* The analysis keeps its own copy of the corpus. */
I3_API i3_status i3_analysis_create(const i3_corpus* corpus,
                                    const i3_analysis_options* options,
                                    i3_analysis** out);
I3_API void i3_analysis_free(i3_analysis* analysis);
I3_API size_t i3_analysis_warning_count(const i3_analysis* analysis);
I3_API const char* i3_analysis_warning(const i3_analysis* analysis, size_t index);
I3_API size_t i3_analysis_unit_count(const i3_analysis* analysis);
I3_API const char* i3_analysis_unit(const i3_analysis* analysis, size_t index);

/* Indicator names: n_papers, total_citations, i3, pr6, ei, cpp, jif, mncs, rcr.
 * I3_ERR_UNDEFINED when the indicator is undefined for the unit. */
I3_API i3_status i3_analysis_indicator(const i3_analysis* analysis, const char* unit_id,
                                       const char* indicator, double* out);

/* Formats: "csv", "json", "text", "svg". metadata_json is an optional JSON object of
 * string values embedded in the report metadata. */
I3_API i3_status i3_analysis_report(const i3_analysis* analysis, const char* format,
                                    const char* metadata_json, char** out);
I3_API i3_status i3_analysis_compare(const i3_analysis* analysis, const char* unit_a,
                                     const char* unit_b, const char* format, double* z_out,
                                     double* p_out, char** out);
/* indicators: comma-separated names; NULL for the default set. */
I3_API i3_status i3_analysis_correlate(const i3_analysis* analysis, const char* indicators,
                                       const char* format, char** out);
/* units: comma-separated unit ids; NULL for every unit. Formats "csv", "json", "svg". */
I3_API i3_status i3_analysis_curves(const i3_analysis* analysis, const char* units,
                                    const char* format, char** out);
I3_API i3_status i3_analysis_percentiles_csv(const i3_analysis* analysis, char** out);

#ifdef __cplusplus
}
#endif

#endif /* I3_I3_H */
