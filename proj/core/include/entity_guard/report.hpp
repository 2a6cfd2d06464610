// Deterministic serialization of the analytics tables. Numeric cells are
// rendered with two decimals, half-up; re-rendering identical inputs
// yields byte-identical output.
#pragma once

#include <string>
#include <string_view>

#include "entity_guard/analytics.hpp"
#include "entity_guard/corpus.hpp"

namespace entity_guard {

enum class ReportFormat { csv, json, markdown };

ReportFormat report_format_from_string(std::string_view name);  // throws UnsupportedFormat
std::string_view to_string(ReportFormat format);

struct RenderedReport {
    ReportFormat format = ReportFormat::markdown;
    std::string content;
    std::string table_id;  // "accuracy_by_category", "error_histogram", ...
};

// Two decimals, round half away from zero: 93.315 -> "93.32".
std::string format_cell(double value);

RenderedReport render_table(const AggregateTable& table, ReportFormat format);
RenderedReport render_table(const ErrorHistogram& histogram, ReportFormat format);
RenderedReport render_table(const LengthBinReport& report, ReportFormat format);
RenderedReport render_table(const CorpusStats& stats, ReportFormat format);

inline constexpr std::array<ErrorBand, 3> kTopErrorBands = {ErrorBand::d1, ErrorBand::d2,
                                                            ErrorBand::gt5};

// Worst category per system for the d=1, d=2 and d>5 bands.
RenderedReport render_top_errors(
    const std::array<std::map<std::string, CategoryCount>, 3>& by_band, ReportFormat format);

// Static vector charts for the histogram and bin reports.
std::string render_chart_svg(const ErrorHistogram& histogram);
std::string render_chart_svg(const LengthBinReport& report);

}  // namespace entity_guard
