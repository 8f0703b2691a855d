#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "i3/inference.hpp"

namespace i3 {

struct CurvePoint {
  std::size_t rank = 0;  // 1-based
  double value = 0.0;
};

// Citation counts sorted descending.
std::vector<CurvePoint> export_citation_curve(std::span<const PublicationRecord> records);
// Percentile values sorted descending.
std::vector<CurvePoint> export_percentile_curve(std::span<const PercentileScore> scores);

struct UnitCurves {
  std::string unit_id;
  std::vector<CurvePoint> citations;
  std::vector<CurvePoint> percentiles;
};

struct ReportColumn {
  std::string name;
  int decimals = 2;
  bool with_share = false;  // value also reported as a percentage of the column total
  bool thousands = false;   // integer counts rendered with thousands separators in text
};

struct ReportCell {
  std::optional<double> value;  // nullopt: indicator undefined for this unit
  std::optional<double> share;
  std::size_t rank = 0;
  bool tied = false;  // rank decided by the unit_id tie-break
  Direction mark = Direction::none;
};

struct ReportRow {
  std::string unit_id;
  std::vector<ReportCell> cells;  // aligned with IndicatorReport::columns
};

struct IndicatorReport {
  std::vector<ReportColumn> columns;
  std::vector<ReportRow> rows;  // ordered by rank of the first share column, else unit_id
  std::map<std::string, std::string> metadata;
  std::vector<UnitCurves> curves;
};

struct UnitIndicators {
  std::string unit_id;
  std::vector<std::optional<double>> values;  // aligned with columns
  std::vector<std::optional<SignificanceResult>> significance;  // may be shorter than values
};

IndicatorReport build_report(std::vector<ReportColumn> columns,
                             std::vector<UnitIndicators> units,
                             std::map<std::string, std::string> metadata = {});

enum class ReportFormat { csv, json, text, svg };
ReportFormat parse_report_format(std::string_view text);

std::string render(const IndicatorReport& report, ReportFormat format);

// "7,058"
std::string format_thousands(double value);
std::string format_fixed(double value, int decimals);
std::string_view mark_symbol(Direction direction);
// Table cell such as "43.29 [1]⁺".
std::string format_ranked_cell(double value, int decimals, std::size_t rank, Direction mark);
// One text-table row: unit_id followed by each column's cell, joined by ", ".
std::string format_row(const IndicatorReport& report, const ReportRow& row);

std::string render_curves(std::span<const UnitCurves> curves, ReportFormat format);
std::string render_correlations(const CorrelationMatrix& matrix, ReportFormat format);
std::string render_significance(std::span<const SignificanceResult> results,
                                ReportFormat format);

}  // namespace i3
