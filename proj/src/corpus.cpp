#include "i3/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace i3 {

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

struct PaperFacts {
  std::string venue_id;
  int pub_year;
  DocType doc_type;
  std::int64_t citations;
  std::string unit_id;
};

bool same_paper(const PaperFacts& a, const PublicationRecord& r) {
  return a.venue_id == r.venue_id && a.pub_year == r.pub_year && a.doc_type == r.doc_type &&
         a.citations == r.citations;
}

}  // namespace

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::letter: return "letter";
    case DocType::other: return "other";
  }
  return "other";
}

DocType parse_doc_type(std::string_view text, bool* known) {
  const auto t = detail::lower(detail::trim(text));
  DocType type = DocType::other;
  bool exact = true;
  if (t == "article") type = DocType::article;
  else if (t == "review") type = DocType::review;
  else if (t == "letter") type = DocType::letter;
  else if (t != "other") exact = false;
  if (known) *known = exact;
  return type;
}

std::vector<DelimitedRow> parse_delimited(std::string_view text, char delimiter, char comment) {
  std::vector<DelimitedRow> rows;
  DelimitedRow row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && detail::trim(row.fields[0]).empty();
    if (!blank) rows.push_back(std::move(row));
    row = DelimitedRow{};
    row.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (comment != '\0' && c == comment && row.fields.empty() && !field_started) {
      while (i < text.size() && text[i] != '\n') ++i;
      ++line;
      row.line = line;
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\r') {
      // CRLF line endings
    } else if (c == '\n') {
      ++line;
      end_row();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (!field.empty() || !row.fields.empty() || field_started) end_row();
  return rows;
}

void validate(const Corpus& corpus, const LoadOptions& options) {
  std::set<std::pair<std::string, std::string>> keys;
  std::unordered_map<std::string, PaperFacts> papers;
  for (const auto& r : corpus.records) {
    if (r.paper_id.empty()) throw Error(ErrorCode::validation, "empty paper_id");
    if (r.venue_id.empty())
      throw Error(ErrorCode::validation, "paper " + r.paper_id + ": empty venue_id");
    if (r.citations < 0)
      throw Error(ErrorCode::validation, "paper " + r.paper_id + ": negative citations");
    if (r.pub_year < options.min_year || r.pub_year > options.max_year)
      throw Error(ErrorCode::validation,
                  "paper " + r.paper_id + ": pub_year " + std::to_string(r.pub_year) +
                      " outside " + std::to_string(options.min_year) + "-" +
                      std::to_string(options.max_year));
    if (!keys.emplace(r.paper_id, r.unit_id).second)
      throw Error(ErrorCode::duplicate_key,
                  "duplicate paper_id " + r.paper_id + " for unit '" + r.unit_id + "'");
    auto [it, inserted] = papers.try_emplace(
        r.paper_id, PaperFacts{r.venue_id, r.pub_year, r.doc_type, r.citations, r.unit_id});
    if (!inserted && !same_paper(it->second, r))
      throw Error(ErrorCode::validation,
                  "paper " + r.paper_id + " listed for units '" + it->second.unit_id +
                      "' and '" + r.unit_id + "' with different attributes");
  }
}

Corpus parse_corpus(std::string_view text, const LoadOptions& options,
                    Diagnostics* diagnostics) {
  auto rows = parse_delimited(text, options.delimiter);
  if (rows.empty()) throw Error(ErrorCode::schema, "missing header row");

  const auto& header = rows.front().fields;
  std::size_t column[6];
  for (std::size_t c = 0; c < 6; ++c) {
    std::size_t found = header.size();
    for (std::size_t h = 0; h < header.size(); ++h) {
      if (detail::trim(header[h]) == kCorpusColumns[c]) {
        found = h;
        break;
      }
    }
    if (found == header.size())
      throw Error(ErrorCode::schema, std::string("missing column '") + kCorpusColumns[c] + "'");
    column[c] = found;
  }

  Corpus corpus;
  corpus.records.reserve(rows.size() - 1);
  std::set<std::pair<std::string, std::string>> keys;
  std::unordered_map<std::string, PaperFacts> papers;
  int max_year = 0;

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto where = at_line(row.line);
    if (row.fields.size() != header.size())
      throw Error(ErrorCode::validation, where + "expected " + std::to_string(header.size()) +
                                             " fields, found " +
                                             std::to_string(row.fields.size()));
    auto field = [&](std::size_t c) { return detail::trim(row.fields[column[c]]); };

    PublicationRecord r;
    r.paper_id = std::string(field(0));
    r.unit_id = std::string(field(1));
    r.venue_id = std::string(field(2));
    if (r.paper_id.empty()) throw Error(ErrorCode::validation, where + "empty paper_id");
    if (r.venue_id.empty()) throw Error(ErrorCode::validation, where + "empty venue_id");

    auto year = detail::parse_int<int>(field(3));
    if (!year)
      throw Error(ErrorCode::validation,
                  where + "pub_year '" + std::string(field(3)) + "' is not an integer");
    if (*year < options.min_year || *year > options.max_year)
      throw Error(ErrorCode::validation, where + "pub_year " + std::to_string(*year) +
                                             " outside " + std::to_string(options.min_year) +
                                             "-" + std::to_string(options.max_year));
    r.pub_year = *year;

    bool known = true;
    r.doc_type = parse_doc_type(field(4), &known);
    if (!known && diagnostics)
      diagnostics->warn(where + "unknown doc_type '" + std::string(field(4)) +
                        "' mapped to other");

    auto citations = detail::parse_int<std::int64_t>(field(5));
    if (!citations)
      throw Error(ErrorCode::validation,
                  where + "citations '" + std::string(field(5)) + "' is not an integer");
    if (*citations < 0)
      throw Error(ErrorCode::validation,
                  where + "negative citations " + std::to_string(*citations));
    r.citations = *citations;

    if (!keys.emplace(r.paper_id, r.unit_id).second)
      throw Error(ErrorCode::duplicate_key,
                  where + "duplicate paper_id " + r.paper_id + " for unit '" + r.unit_id + "'");
    auto [it, inserted] = papers.try_emplace(
        r.paper_id, PaperFacts{r.venue_id, r.pub_year, r.doc_type, r.citations, r.unit_id});
    if (!inserted && !same_paper(it->second, r))
      throw Error(ErrorCode::validation, where + "paper " + r.paper_id +
                                             " repeats with different venue/year/type/citations");

    max_year = std::max(max_year, r.pub_year);
    corpus.records.push_back(std::move(r));
  }

  if (options.census_year) corpus.census_year = *options.census_year;
  else if (!corpus.records.empty()) corpus.census_year = max_year + 1;
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options,
                   Diagnostics* diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open input file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_corpus(buffer.str(), options, diagnostics);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string write_corpus_csv(const Corpus& corpus, char delimiter) {
  std::string out;
  for (std::size_t c = 0; c < 6; ++c) {
    if (c) out += delimiter;
    out += kCorpusColumns[c];
  }
  out += '\n';
  for (const auto& r : corpus.records) {
    out += detail::csv_field(r.paper_id, delimiter);
    out += delimiter;
    out += detail::csv_field(r.unit_id, delimiter);
    out += delimiter;
    out += detail::csv_field(r.venue_id, delimiter);
    out += delimiter;
    out += std::to_string(r.pub_year);
    out += delimiter;
    out += to_string(r.doc_type);
    out += delimiter;
    out += std::to_string(r.citations);
    out += '\n';
  }
  return out;
}

UnitGroups group_by_unit(const Corpus& corpus) {
  UnitGroups groups;
  for (const auto& r : corpus.records) groups[r.unit_id].push_back(r);
  return groups;
}

std::vector<std::string> evaluated_units(const Corpus& corpus) {
  std::set<std::string> ids;
  for (const auto& r : corpus.records)
    if (!r.unit_id.empty()) ids.insert(r.unit_id);
  return {ids.begin(), ids.end()};
}

}  // namespace i3
