#include "i3/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "text_util.hpp"

namespace i3 {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::size_t display_width(std::string_view s) {
  std::size_t width = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++width;
  return width;
}

std::string pad_right(std::string s, std::size_t width) {
  const auto w = display_width(s);
  if (w < width) s.append(width - w, ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  const auto w = display_width(s);
  if (w < width) s.insert(0, width - w, ' ');
  return s;
}

std::string plain_value(const ReportColumn& column, const std::optional<double>& value) {
  return value ? format_fixed(*value, column.decimals) : std::string();
}

std::string text_cell(const ReportColumn& column, const ReportCell& cell) {
  if (!cell.value) return "n/a";
  if (column.thousands) return format_thousands(*cell.value);
  if (column.with_share) {
    if (!cell.share) return "n/a";
    return format_ranked_cell(*cell.share, 2, cell.rank, cell.mark);
  }
  return format_ranked_cell(*cell.value, column.decimals, cell.rank, cell.mark);
}

std::string metadata_comment(const std::map<std::string, std::string>& metadata) {
  std::string out;
  for (const auto& [key, value] : metadata) {
    std::string flat = value;
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    out += "# " + key + ": " + flat + "\n";
  }
  return out;
}

std::string render_csv(const IndicatorReport& report) {
  std::string out = metadata_comment(report.metadata);
  out += "unit_id";
  for (const auto& c : report.columns) {
    out += "," + c.name + "," + c.name + "_rank";
    if (c.with_share) out += "," + c.name + "_share," + c.name + "_significance";
  }
  out += '\n';
  for (const auto& row : report.rows) {
    out += detail::csv_field(row.unit_id);
    for (std::size_t j = 0; j < report.columns.size(); ++j) {
      const auto& c = report.columns[j];
      const auto& cell = row.cells[j];
      out += "," + plain_value(c, cell.value) + "," + std::to_string(cell.rank);
      if (c.with_share) {
        out += "," + (cell.share ? format_fixed(*cell.share, 2) : std::string());
        out += ",";
        out += to_string(cell.mark);
      }
    }
    out += '\n';
  }
  return out;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string render_json(const IndicatorReport& report) {
  ordered_json doc;
  doc["metadata"] = ordered_json::object();
  for (const auto& [key, value] : report.metadata) doc["metadata"][key] = value;
  doc["columns"] = ordered_json::array();
  for (const auto& c : report.columns) doc["columns"].push_back(c.name);
  doc["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["unit_id"] = row.unit_id;
    for (std::size_t j = 0; j < report.columns.size(); ++j) {
      const auto& c = report.columns[j];
      const auto& cell = row.cells[j];
      ordered_json v;
      v["value"] = optional_number(cell.value);
      if (c.with_share) v["share"] = optional_number(cell.share);
      v["rank"] = cell.rank;
      v["tied"] = cell.tied;
      if (c.with_share) v["significance"] = std::string(to_string(cell.mark));
      r[c.name] = std::move(v);
    }
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

std::string render_text(const IndicatorReport& report) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"unit"};
  for (const auto& c : report.columns) header.push_back(c.with_share ? "%" + c.name : c.name);
  table.push_back(std::move(header));
  for (const auto& row : report.rows) {
    std::vector<std::string> line{row.unit_id};
    for (std::size_t j = 0; j < report.columns.size(); ++j)
      line.push_back(text_cell(report.columns[j], row.cells[j]));
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> widths(table.front().size(), 0);
  for (const auto& line : table)
    for (std::size_t j = 0; j < line.size(); ++j)
      widths[j] = std::max(widths[j], display_width(line[j]));

  std::string out = metadata_comment(report.metadata);
  for (const auto& line : table) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (j) out += "  ";
      out += j == 0 ? pad_right(line[j], widths[j]) : pad_left(line[j], widths[j]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  bool any_tie = false;
  for (const auto& row : report.rows)
    for (const auto& cell : row.cells) any_tie = any_tie || cell.tied;
  if (any_tie) out += "# rank ties broken by unit_id\n";
  out += "# ⁺ above expectation, ⁻ below expectation (z-test)\n";
  return out;
}

struct Panel {
  double x0, y0, width, height;
  double x_max, y_max;
  std::string title;
};

std::string svg_polyline(const Panel& p, const std::vector<CurvePoint>& points,
                         std::string_view color, std::string_view unit) {
  std::string out = "    <polyline fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"1.5\" data-unit=\"" + std::string(unit) + "\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double fx = p.x_max > 1 ? (static_cast<double>(points[i].rank) - 1) / (p.x_max - 1)
                                  : 0.0;
    const double fy = p.y_max > 0 ? points[i].value / p.y_max : 0.0;
    if (i) out += ' ';
    out += format_fixed(p.x0 + fx * p.width, 2) + "," +
           format_fixed(p.y0 + p.height - fy * p.height, 2);
  }
  out += "\"/>\n";
  return out;
}

std::string svg_panel(const Panel& p, std::span<const UnitCurves> curves, bool percentiles) {
  std::string out = "  <g class=\"panel\" data-series=\"";
  out += percentiles ? "percentiles" : "citations";
  out += "\">\n";
  out += "    <rect x=\"" + format_fixed(p.x0, 0) + "\" y=\"" + format_fixed(p.y0, 0) +
         "\" width=\"" + format_fixed(p.width, 0) + "\" height=\"" + format_fixed(p.height, 0) +
         "\" fill=\"none\" stroke=\"#000\"/>\n";
  out += "    <text x=\"" + format_fixed(p.x0, 0) + "\" y=\"" + format_fixed(p.y0 - 8, 0) +
         "\" font-size=\"12\">" + p.title + "</text>\n";
  out += "    <text x=\"" + format_fixed(p.x0 - 4, 0) + "\" y=\"" + format_fixed(p.y0 + 4, 0) +
         "\" font-size=\"10\" text-anchor=\"end\">" + format_fixed(p.y_max, 0) + "</text>\n";
  out += "    <text x=\"" + format_fixed(p.x0 - 4, 0) + "\" y=\"" +
         format_fixed(p.y0 + p.height, 0) + "\" font-size=\"10\" text-anchor=\"end\">0</text>\n";
  for (std::size_t u = 0; u < curves.size(); ++u) {
    const auto& series = percentiles ? curves[u].percentiles : curves[u].citations;
    out += svg_polyline(p, series, kPalette[u % std::size(kPalette)], curves[u].unit_id);
  }
  out += "  </g>\n";
  return out;
}

std::string render_curves_svg(std::span<const UnitCurves> curves) {
  double max_rank = 1, max_citations = 0;
  for (const auto& c : curves) {
    max_rank = std::max(max_rank, static_cast<double>(c.citations.size()));
    max_rank = std::max(max_rank, static_cast<double>(c.percentiles.size()));
    for (const auto& p : c.citations) max_citations = std::max(max_citations, p.value);
  }
  const Panel left{60, 40, 360, 280, max_rank, max_citations, "citations"};
  const Panel right{500, 40, 360, 280, max_rank, 100.0, "percentiles"};
  const double height = 360 + 18.0 * static_cast<double>(curves.size());

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"" +
                    format_fixed(height, 0) + "\" viewBox=\"0 0 900 " +
                    format_fixed(height, 0) + "\">\n";
  out += svg_panel(left, curves, false);
  out += svg_panel(right, curves, true);
  out += "  <g class=\"legend\">\n";
  for (std::size_t u = 0; u < curves.size(); ++u) {
    const double y = 350 + 18.0 * static_cast<double>(u);
    out += "    <text x=\"60\" y=\"" + format_fixed(y, 0) + "\" font-size=\"11\" fill=\"" +
           kPalette[u % std::size(kPalette)] + "\">" + curves[u].unit_id + " (n=" +
           std::to_string(curves[u].citations.size()) + ")</text>\n";
  }
  out += "  </g>\n</svg>\n";
  return out;
}

std::string format_correlation(const std::optional<double>& r, const std::optional<double>& p) {
  if (!r) return "n/a";
  return format_fixed(*r, 3) + std::string(p ? significance_stars(*p) : "");
}

}  // namespace

std::vector<CurvePoint> export_citation_curve(std::span<const PublicationRecord> records) {
  std::vector<std::int64_t> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back(r.citations);
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<CurvePoint> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back({i + 1, static_cast<double>(values[i])});
  return out;
}

std::vector<CurvePoint> export_percentile_curve(std::span<const PercentileScore> scores) {
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.value);
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<CurvePoint> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({i + 1, values[i]});
  return out;
}

IndicatorReport build_report(std::vector<ReportColumn> columns,
                             std::vector<UnitIndicators> units,
                             std::map<std::string, std::string> metadata) {
  if (units.empty()) throw Error(ErrorCode::domain, "cannot build a report without units");
  const std::size_t k = columns.size();
  for (const auto& u : units)
    if (u.values.size() != k)
      throw Error(ErrorCode::domain, "unit " + u.unit_id + " has " +
                                         std::to_string(u.values.size()) + " values for " +
                                         std::to_string(k) + " columns");

  IndicatorReport report;
  report.metadata = std::move(metadata);
  report.metadata.emplace("rank_tie_break", "unit_id ascending");
  report.rows.resize(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    report.rows[i].unit_id = units[i].unit_id;
    report.rows[i].cells.resize(k);
  }

  for (std::size_t j = 0; j < k; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      auto& cell = report.rows[i].cells[j];
      cell.value = units[i].values[j];
      if (cell.value) total += *cell.value;
      if (j < units[i].significance.size() && units[i].significance[j])
        cell.mark = units[i].significance[j]->direction;
    }
    if (columns[j].with_share && total > 0.0)
      for (auto& row : report.rows)
        if (row.cells[j].value) row.cells[j].share = *row.cells[j].value / total * 100.0;

    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), 0);
    auto value_of = [&](std::size_t i) { return report.rows[i].cells[j].value; };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto va = value_of(a), vb = value_of(b);
      if (va.has_value() != vb.has_value()) return va.has_value();
      if (va && vb && *va != *vb) return *va > *vb;
      return units[a].unit_id < units[b].unit_id;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      auto& cell = report.rows[order[pos]].cells[j];
      cell.rank = pos + 1;
      auto same = [&](std::size_t other) {
        return value_of(other) && cell.value && *value_of(other) == *cell.value;
      };
      cell.tied = cell.value && ((pos > 0 && same(order[pos - 1])) ||
                                 (pos + 1 < order.size() && same(order[pos + 1])));
    }
  }

  std::size_t sort_column = k;
  for (std::size_t j = 0; j < k; ++j)
    if (columns[j].with_share) {
      sort_column = j;
      break;
    }
  std::sort(report.rows.begin(), report.rows.end(), [&](const auto& a, const auto& b) {
    if (sort_column < k) return a.cells[sort_column].rank < b.cells[sort_column].rank;
    return a.unit_id < b.unit_id;
  });
  report.columns = std::move(columns);
  return report;
}

ReportFormat parse_report_format(std::string_view text) {
  const auto t = detail::lower(detail::trim(text));
  if (t == "csv") return ReportFormat::csv;
  if (t == "json") return ReportFormat::json;
  if (t == "text" || t == "text-table" || t == "txt") return ReportFormat::text;
  if (t == "svg" || t == "svg-curves") return ReportFormat::svg;
  throw Error(ErrorCode::usage, "unknown output format '" + std::string(text) +
                                    "' (expected csv, json, text or svg)");
}

std::string render(const IndicatorReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return render_csv(report);
    case ReportFormat::json: return render_json(report);
    case ReportFormat::text: return render_text(report);
    case ReportFormat::svg: return render_curves_svg(report.curves);
  }
  throw Error(ErrorCode::usage, "unknown output format");
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_thousands(double value) {
  auto digits = format_fixed(std::round(value), 0);
  const bool negative = !digits.empty() && digits.front() == '-';
  if (negative) digits.erase(0, 1);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return negative ? "-" + out : out;
}

std::string_view mark_symbol(Direction direction) {
  switch (direction) {
    case Direction::above: return "⁺";
    case Direction::below: return "⁻";
    case Direction::none: return "";
  }
  return "";
}

std::string format_ranked_cell(double value, int decimals, std::size_t rank, Direction mark) {
  return format_fixed(value, decimals) + " [" + std::to_string(rank) + "]" +
         std::string(mark_symbol(mark));
}

std::string format_row(const IndicatorReport& report, const ReportRow& row) {
  std::string out = row.unit_id;
  for (std::size_t j = 0; j < report.columns.size(); ++j)
    out += ", " + text_cell(report.columns[j], row.cells[j]);
  return out;
}

std::string render_curves(std::span<const UnitCurves> curves, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: {
      std::string out = "unit_id,series,rank,value\n";
      for (const auto& c : curves) {
        for (const auto& p : c.citations)
          out += detail::csv_field(c.unit_id) + ",citations," + std::to_string(p.rank) + "," +
                 format_fixed(p.value, 0) + "\n";
        for (const auto& p : c.percentiles)
          out += detail::csv_field(c.unit_id) + ",percentiles," + std::to_string(p.rank) + "," +
                 format_fixed(p.value, 6) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json doc = ordered_json::object();
      for (const auto& c : curves) {
        ordered_json u;
        u["citations"] = ordered_json::array();
        for (const auto& p : c.citations) u["citations"].push_back({p.rank, p.value});
        u["percentiles"] = ordered_json::array();
        for (const auto& p : c.percentiles) u["percentiles"].push_back({p.rank, p.value});
        doc[c.unit_id] = std::move(u);
      }
      return doc.dump(2) + "\n";
    }
    case ReportFormat::svg: return render_curves_svg(curves);
    case ReportFormat::text: break;
  }
  throw Error(ErrorCode::usage, "curves support csv, json and svg output");
}

std::string render_correlations(const CorrelationMatrix& m, ReportFormat format) {
  const std::size_t k = m.indicator_names.size();
  switch (format) {
    case ReportFormat::text: {
      std::vector<std::vector<std::string>> table;
      std::vector<std::string> header{"indicator"};
      for (const auto& name : m.indicator_names) header.push_back(name);
      table.push_back(std::move(header));
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::string> line{m.indicator_names[i]};
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) line.emplace_back("");
          else if (i < j) line.push_back(format_correlation(m.spearman[i][j], m.spearman_p[i][j]));
          else line.push_back(format_correlation(m.pearson[i][j], m.pearson_p[i][j]));
        }
        table.push_back(std::move(line));
      }
      std::vector<std::size_t> widths(k + 1, 0);
      for (const auto& line : table)
        for (std::size_t j = 0; j < line.size(); ++j)
          widths[j] = std::max(widths[j], display_width(line[j]));
      std::string out = "# Spearman rho (upper triangle), Pearson r (lower triangle); n = " +
                        std::to_string(m.n) + "\n";
      for (const auto& line : table) {
        for (std::size_t j = 0; j < line.size(); ++j) {
          if (j) out += "  ";
          out += j == 0 ? pad_right(line[j], widths[j]) : pad_left(line[j], widths[j]);
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
      }
      out += "# ** significant at the 0.01 level (2-tailed); * at the 0.05 level\n";
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "x,y,pearson,pearson_p,spearman,spearman_p,n\n";
      auto cell = [](const std::optional<double>& v, int d) {
        return v ? format_fixed(*v, d) : std::string();
      };
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          out += m.indicator_names[i] + "," + m.indicator_names[j] + "," +
                 cell(m.pearson[i][j], 6) + "," + cell(m.pearson_p[i][j], 6) + "," +
                 cell(m.spearman[i][j], 6) + "," + cell(m.spearman_p[i][j], 6) + "," +
                 std::to_string(m.n) + "\n";
      return out;
    }
    case ReportFormat::json: {
      auto matrix = [&](const auto& mm) {
        ordered_json a = ordered_json::array();
        for (const auto& row : mm) {
          ordered_json r = ordered_json::array();
          for (const auto& v : row) r.push_back(optional_number(v));
          a.push_back(std::move(r));
        }
        return a;
      };
      ordered_json doc;
      doc["indicators"] = m.indicator_names;
      doc["n"] = m.n;
      doc["pearson"] = matrix(m.pearson);
      doc["pearson_p"] = matrix(m.pearson_p);
      doc["spearman"] = matrix(m.spearman);
      doc["spearman_p"] = matrix(m.spearman_p);
      return doc.dump(2) + "\n";
    }
    case ReportFormat::svg: break;
  }
  throw Error(ErrorCode::usage, "correlations support text, csv and json output");
}

std::string render_significance(std::span<const SignificanceResult> results,
                                ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: {
      std::string out = "unit_id,reference,scheme,mode,z,p_two_sided,direction,alpha\n";
      for (const auto& r : results)
        out += detail::csv_field(r.unit_id) + "," + detail::csv_field(r.reference) + "," +
               r.scheme_name + "," + std::string(to_string(r.mode)) + "," +
               format_fixed(r.z, 6) + "," + format_fixed(r.p_two_sided, 8) + "," +
               std::string(to_string(r.direction)) + "," + format_fixed(r.alpha, 4) + "\n";
      return out;
    }
    case ReportFormat::json: {
      ordered_json doc = ordered_json::array();
      for (const auto& r : results) {
        ordered_json o;
        o["unit_id"] = r.unit_id;
        o["reference"] = r.reference;
        o["scheme"] = r.scheme_name;
        o["mode"] = std::string(to_string(r.mode));
        o["z"] = r.z;
        o["p_two_sided"] = r.p_two_sided;
        o["direction"] = std::string(to_string(r.direction));
        o["alpha"] = r.alpha;
        doc.push_back(std::move(o));
      }
      return doc.dump(2) + "\n";
    }
    case ReportFormat::text: {
      std::string out;
      for (const auto& r : results)
        out += r.unit_id + " vs " + r.reference + " [" + r.scheme_name + ", " +
               std::string(to_string(r.mode)) + "]: z = " + format_fixed(r.z, 4) +
               ", p = " + format_fixed(r.p_two_sided, 6) + ", " +
               std::string(to_string(r.direction)) + " at alpha " + format_fixed(r.alpha, 4) +
               "\n";
      return out;
    }
    case ReportFormat::svg: break;
  }
  throw Error(ErrorCode::usage, "significance results support text, csv and json output");
}

}  // namespace i3
