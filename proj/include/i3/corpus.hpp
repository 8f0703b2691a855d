#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "i3/error.hpp"

namespace i3 {

enum class DocType { article, review, letter, other };

std::string_view to_string(DocType type);
// Unknown strings map to DocType::other; `known` reports whether the mapping was exact.
DocType parse_doc_type(std::string_view text, bool* known = nullptr);

struct PublicationRecord {
  std::string paper_id;
  std::string unit_id;  // empty: member of the comparison population only
  std::string venue_id;
  int pub_year = 0;
  DocType doc_type = DocType::article;
  std::int64_t citations = 0;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct Corpus {
  std::vector<PublicationRecord> records;
  int census_year = 0;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct LoadOptions {
  char delimiter = ',';
  int min_year = 1900;
  int max_year = 2100;
  // When unset, the census year is one past the latest publication year.
  std::optional<int> census_year;
};

inline constexpr const char* kCorpusColumns[] = {"paper_id", "unit_id", "venue_id",
                                                 "pub_year", "doc_type", "citations"};

Corpus parse_corpus(std::string_view text, const LoadOptions& options = {},
                    Diagnostics* diagnostics = nullptr);
Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {},
                   Diagnostics* diagnostics = nullptr);

// Checks record invariants; throws Error on the first violation.
void validate(const Corpus& corpus, const LoadOptions& options = {});

std::string write_corpus_csv(const Corpus& corpus, char delimiter = ',');

using UnitGroups = std::map<std::string, std::vector<PublicationRecord>>;

UnitGroups group_by_unit(const Corpus& corpus);

// Unit ids that are evaluated (non-empty), sorted.
std::vector<std::string> evaluated_units(const Corpus& corpus);

struct DelimitedRow {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> fields;
};

// Delimiter-separated parser with RFC 4180 quoting. Blank lines are skipped, and so are
// lines starting with `comment` when it is non-zero.
std::vector<DelimitedRow> parse_delimited(std::string_view text, char delimiter = ',',
                                          char comment = '\0');

}  // namespace i3
