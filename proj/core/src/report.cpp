#include "entity_guard/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "entity_guard/errors.hpp"

namespace entity_guard {

namespace {

using Json = nlohmann::ordered_json;

// CSV quoting per RFC 4180; only when needed so simple tables stay plain.
std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

std::string join_row_csv(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(cells[i]);
    }
    out += '\n';
    return out;
}

std::string join_row_md(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) {
        out += ' ';
        out += c;
        out += " |";
    }
    out += '\n';
    return out;
}

std::string md_separator(std::size_t columns) {
    std::string out = "|";
    for (std::size_t i = 0; i < columns; ++i) out += " --- |";
    out += '\n';
    return out;
}

double round2(double value) {
    // half away from zero at the second decimal
    return std::floor(std::fabs(value) * 100.0 + 0.5) / 100.0 * (value < 0 ? -1.0 : 1.0);
}

// Grid renderer shared by every table shape.
struct Grid {
    std::string table_id;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    RenderedReport render(ReportFormat format) const {
        RenderedReport out;
        out.format = format;
        out.table_id = table_id;
        switch (format) {
            case ReportFormat::csv: {
                out.content += join_row_csv(header);
                for (const auto& row : rows) out.content += join_row_csv(row);
                break;
            }
            case ReportFormat::markdown: {
                out.content += join_row_md(header);
                out.content += md_separator(header.size());
                for (const auto& row : rows) out.content += join_row_md(row);
                break;
            }
            case ReportFormat::json: {
                Json j;
                j["table"] = table_id;
                j["columns"] = header;
                Json body = Json::array();
                for (const auto& row : rows) body.push_back(row);
                j["rows"] = std::move(body);
                out.content = j.dump(2);
                out.content += '\n';
                break;
            }
        }
        return out;
    }
};

}  // namespace

ReportFormat report_format_from_string(std::string_view name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw UnsupportedFormat("unsupported output format '" + std::string(name) +
                            "'; expected csv, json, or markdown");
}

std::string_view to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::csv: return "csv";
        case ReportFormat::json: return "json";
        case ReportFormat::markdown: return "markdown";
    }
    return {};
}

std::string format_cell(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", round2(value));
    return buf;
}

RenderedReport render_table(const AggregateTable& table, ReportFormat format) {
    Grid grid;
    grid.table_id = table.axis == TableAxis::by_category ? "accuracy_by_category"
                                                         : "accuracy_by_direction";
    grid.header.push_back(table.axis == TableAxis::by_category ? "Category" : "Direction");
    for (const auto& system : table.systems) grid.header.push_back(system);

    for (const auto& key : table.keys) {
        std::vector<std::string> row{key};
        for (const auto& system : table.systems) {
            auto cell = table.cell(system, key);
            row.push_back(cell ? format_cell(*cell) : "");
        }
        grid.rows.push_back(std::move(row));
    }
    std::vector<std::string> macro{"macro avg."};
    for (const auto& system : table.systems) {
        auto it = table.macro_row.find(system);
        macro.push_back(it != table.macro_row.end() ? format_cell(it->second) : "");
    }
    grid.rows.push_back(std::move(macro));
    return grid.render(format);
}

RenderedReport render_table(const ErrorHistogram& histogram, ReportFormat format) {
    Grid grid;
    grid.table_id = "error_histogram";
    grid.header.push_back("System");
    for (auto name : kHistogramBandNames) grid.header.emplace_back(name);
    grid.header.push_back("total");
    for (const auto& [system, bands] : histogram.by_system) {
        std::vector<std::string> row{system};
        std::uint64_t total = 0;
        for (auto v : bands) {
            row.push_back(std::to_string(v));
            total += v;
        }
        row.push_back(std::to_string(total));
        grid.rows.push_back(std::move(row));
    }
    return grid.render(format);
}

RenderedReport render_table(const LengthBinReport& report, ReportFormat format) {
    Grid grid;
    grid.table_id = "length_bins";
    grid.header = {"Bin", "Tokens", "Samples", "Records", "Accuracy %", "Modified %",
                   "No-match %"};
    for (std::size_t i = 0; i < report.bins.size(); ++i) {
        const auto& bin = report.bins[i];
        grid.rows.push_back({
            std::to_string(i + 1),
            std::to_string(bin.min_tokens) + "-" + std::to_string(bin.max_tokens),
            std::to_string(bin.sample_count),
            std::to_string(bin.record_count),
            format_cell(bin.accuracy_pct),
            format_cell(bin.modified_pct),
            format_cell(bin.no_match_pct),
        });
    }
    return grid.render(format);
}

RenderedReport render_table(const CorpusStats& stats, ReportFormat format) {
    Grid grid;
    grid.table_id = "corpus_stats";
    grid.header = {"Group", "Samples", "Tokens mean", "Tokens std", "Entity chars mean",
                   "Entity chars std"};
    const auto row = [&](std::string name, const MeanStd& tokens, const MeanStd& chars) {
        grid.rows.push_back({std::move(name), std::to_string(tokens.count),
                             format_cell(tokens.mean), format_cell(tokens.stddev),
                             format_cell(chars.mean), format_cell(chars.stddev)});
    };
    row("all", stats.tokens_overall, stats.entity_chars_overall);
    for (const auto& [lang, ms] : stats.tokens_by_language) {
        row(std::string(to_string(lang)), ms, stats.entity_chars_by_language.at(lang));
    }
    for (const auto& [cat, ms] : stats.tokens_by_category) {
        row(std::string(to_string(cat)), ms, stats.entity_chars_by_category.at(cat));
    }
    return grid.render(format);
}

RenderedReport render_top_errors(
    const std::array<std::map<std::string, CategoryCount>, 3>& by_band, ReportFormat format) {
    Grid grid;
    grid.table_id = "top_error_categories";
    grid.header = {"System"};
    for (auto band : kTopErrorBands) {
        grid.header.push_back(std::string(to_string(band)) + " category");
        grid.header.push_back(std::string(to_string(band)) + " errors");
    }
    std::set<std::string> systems;
    for (const auto& band : by_band) {
        for (const auto& [system, _] : band) systems.insert(system);
    }
    for (const auto& system : systems) {
        std::vector<std::string> row{system};
        for (const auto& band : by_band) {
            auto it = band.find(system);
            if (it == band.end()) {
                row.emplace_back("");
                row.emplace_back("");
            } else {
                row.emplace_back(to_string(it->second.category));
                row.push_back(std::to_string(it->second.count));
            }
        }
        grid.rows.push_back(std::move(row));
    }
    return grid.render(format);
}

// ---- charts -----------------------------------------------------------------

namespace {

constexpr double kChartW = 900.0;
constexpr double kChartH = 420.0;
constexpr double kMarginL = 60.0;
constexpr double kMarginB = 60.0;
constexpr double kMarginT = 30.0;
constexpr double kMarginR = 20.0;

const char* kPalette[] = {"#4c78a8", "#f58518", "#54a24b", "#e45756",
                          "#72b7b2", "#eeca3b", "#b279a2", "#9d755d"};

std::string svg_open() {
    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kChartW << "\" height=\""
       << kChartH << "\" viewBox=\"0 0 " << kChartW << " " << kChartH << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return ss.str();
}

std::string svg_text(double x, double y, std::string_view text, int size = 12,
                     const char* anchor = "middle") {
    std::ostringstream ss;
    ss << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\""
       << size << "\" text-anchor=\"" << anchor << "\">" << text << "</text>\n";
    return ss.str();
}

}  // namespace

std::string render_chart_svg(const ErrorHistogram& histogram) {
    // Grouped bars: one group per band, one bar per system, share of that
    // system's errors on the y axis.
    std::vector<std::string> systems;
    for (const auto& [system, _] : histogram.by_system) systems.push_back(system);

    std::string svg = svg_open();
    const double plot_w = kChartW - kMarginL - kMarginR;
    const double plot_h = kChartH - kMarginT - kMarginB;
    double max_share = 0.0;
    for (const auto& system : systems) {
        const auto total = histogram.total_errors(system);
        if (total == 0) continue;
        for (auto v : histogram.by_system.at(system)) {
            max_share = std::max(max_share, static_cast<double>(v) / static_cast<double>(total));
        }
    }
    if (max_share == 0.0) max_share = 1.0;

    const double group_w = plot_w / static_cast<double>(kHistogramBands);
    const double bar_w = systems.empty() ? group_w : group_w * 0.9 / static_cast<double>(systems.size());
    for (std::size_t band = 0; band < kHistogramBands; ++band) {
        const double gx = kMarginL + group_w * static_cast<double>(band);
        for (std::size_t s = 0; s < systems.size(); ++s) {
            const auto total = histogram.total_errors(systems[s]);
            const double share =
                total == 0 ? 0.0
                           : static_cast<double>(histogram.by_system.at(systems[s])[band]) /
                                 static_cast<double>(total);
            const double h = plot_h * share / max_share;
            std::ostringstream rect;
            rect << "<rect x=\"" << gx + bar_w * static_cast<double>(s) << "\" y=\""
                 << kMarginT + plot_h - h << "\" width=\"" << bar_w * 0.92 << "\" height=\"" << h
                 << "\" fill=\"" << kPalette[s % 8] << "\"/>\n";
            svg += rect.str();
        }
        svg += svg_text(gx + group_w / 2, kChartH - kMarginB + 18,
                        kHistogramBandNames[band]);
    }
    for (std::size_t s = 0; s < systems.size(); ++s) {
        std::ostringstream key;
        key << "<rect x=\"" << kMarginL + 110.0 * static_cast<double>(s) << "\" y=\"6\" width=\"10\" height=\"10\" fill=\""
            << kPalette[s % 8] << "\"/>\n";
        svg += key.str();
        svg += svg_text(kMarginL + 110.0 * static_cast<double>(s) + 14, 15, systems[s], 11, "start");
    }
    svg += svg_text(14, kMarginT + plot_h / 2, "error share", 12, "middle");
    svg += "</svg>\n";
    return svg;
}

std::string render_chart_svg(const LengthBinReport& report) {
    // Accuracy line over bins, with modified and no-match shares.
    std::string svg = svg_open();
    const double plot_w = kChartW - kMarginL - kMarginR;
    const double plot_h = kChartH - kMarginT - kMarginB;
    const std::size_t n = report.bins.size();
    if (n == 0) return svg + "</svg>\n";

    const auto x_of = [&](std::size_t i) {
        return kMarginL + plot_w * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    };
    const auto y_of = [&](double pct) { return kMarginT + plot_h * (1.0 - pct / 100.0); };

    const struct {
        const char* name;
        double LengthBin::*field;
        const char* color;
    } series[] = {
        {"accuracy", &LengthBin::accuracy_pct, kPalette[0]},
        {"modified", &LengthBin::modified_pct, kPalette[1]},
        {"no-match", &LengthBin::no_match_pct, kPalette[3]},
    };
    for (std::size_t s = 0; s < 3; ++s) {
        std::ostringstream poly;
        poly << "<polyline fill=\"none\" stroke=\"" << series[s].color
             << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            poly << x_of(i) << "," << y_of(report.bins[i].*series[s].field) << " ";
        }
        poly << "\"/>\n";
        svg += poly.str();
        std::ostringstream key;
        key << "<rect x=\"" << kMarginL + 110.0 * static_cast<double>(s)
            << "\" y=\"6\" width=\"10\" height=\"10\" fill=\"" << series[s].color << "\"/>\n";
        svg += key.str();
        svg += svg_text(kMarginL + 110.0 * static_cast<double>(s) + 14, 15, series[s].name, 11,
                        "start");
    }
    for (std::size_t i = 0; i < n; ++i) {
        svg += svg_text(x_of(i), kChartH - kMarginB + 18,
                        std::to_string(report.bins[i].min_tokens) + "-" +
                            std::to_string(report.bins[i].max_tokens));
    }
    for (int pct = 0; pct <= 100; pct += 25) {
        svg += svg_text(kMarginL - 8, y_of(pct) + 4, std::to_string(pct), 11, "end");
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace entity_guard
