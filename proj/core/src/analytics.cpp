#include "entity_guard/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "entity_guard/errors.hpp"
#include "entity_guard/stats_math.hpp"

namespace entity_guard {

const std::array<std::string_view, kHistogramBands> kHistogramBandNames = {
    "no_match", "d=1", "d=2", "d=3", "d=4", "d=5", "d>5",
};

std::string_view to_string(TableAxis axis) {
    return axis == TableAxis::by_category ? "by_category" : "by_direction";
}

std::string_view to_string(ErrorBand band) {
    switch (band) {
        case ErrorBand::d1: return "d=1";
        case ErrorBand::d2: return "d=2";
        case ErrorBand::gt5: return "d>5";
    }
    return {};
}

std::string_view to_string(CorrelationMethod method) {
    return method == CorrelationMethod::pearson ? "pearson" : "spearman";
}

std::optional<double> AggregateTable::cell(const std::string& system,
                                           const std::string& key) const {
    auto it = cells.find({system, key});
    if (it == cells.end()) return std::nullopt;
    return it->second;
}

AggregateTable accuracy_table(std::span<const ScoreRecord> scores, TableAxis axis) {
    if (scores.empty()) throw EmptyCorpus("accuracy_table requires score records");

    // exact / total per (system, category, direction) cell of the full grid
    struct Tally {
        std::uint64_t exact = 0;
        std::uint64_t total = 0;
    };
    std::map<std::tuple<std::string, std::string, std::string>, Tally> grid;
    std::set<std::string> systems, categories, directions;
    for (const auto& r : scores) {
        const std::string cat(to_string(r.category));
        const std::string dir = to_string(r.direction);
        auto& tally = grid[{r.system_id, cat, dir}];
        ++tally.total;
        if (r.outcome.is_exact()) ++tally.exact;
        systems.insert(r.system_id);
        categories.insert(cat);
        directions.insert(dir);
    }

    AggregateTable table;
    table.axis = axis;
    table.systems.assign(systems.begin(), systems.end());
    const auto& outer = axis == TableAxis::by_category ? categories : directions;
    table.keys.assign(outer.begin(), outer.end());
    const auto& inner = axis == TableAxis::by_category ? directions : categories;

    for (const auto& system : table.systems) {
        std::vector<double> row_cells;
        for (const auto& key : table.keys) {
            // equal-weight mean over the inner axis groups that exist
            double sum = 0.0;
            std::size_t groups = 0;
            for (const auto& in : inner) {
                const auto cat = axis == TableAxis::by_category ? key : in;
                const auto dir = axis == TableAxis::by_category ? in : key;
                auto it = grid.find({system, cat, dir});
                if (it == grid.end() || it->second.total == 0) continue;
                sum += 100.0 * static_cast<double>(it->second.exact) /
                       static_cast<double>(it->second.total);
                ++groups;
            }
            if (groups == 0) {
                table.missing.push_back({system, key});
                continue;
            }
            const double cell = sum / static_cast<double>(groups);
            table.cells[{system, key}] = cell;
            row_cells.push_back(cell);
        }
        if (!row_cells.empty()) {
            table.macro_row[system] = stats::mean(row_cells);
        }
    }
    return table;
}

namespace {

std::size_t band_of(const TransferOutcome& outcome) {
    if (outcome.is_no_match()) return 0;
    const auto d = outcome.distance;
    if (d >= 1 && d <= 5) return d;
    return 6;  // d > 5
}

}  // namespace

std::uint64_t ErrorHistogram::total_errors(const std::string& system) const {
    auto it = by_system.find(system);
    if (it == by_system.end()) return 0;
    std::uint64_t sum = 0;
    for (auto v : it->second) sum += v;
    return sum;
}

ErrorHistogram error_histogram(std::span<const ScoreRecord> scores) {
    ErrorHistogram hist;
    for (const auto& r : scores) {
        auto& bands = hist.by_system.try_emplace(r.system_id).first->second;
        if (r.outcome.is_exact()) continue;
        ++bands[band_of(r.outcome)];
    }
    return hist;
}

std::map<std::string, CategoryCount> top_error_category(std::span<const ScoreRecord> scores,
                                                        ErrorBand band) {
    const std::size_t want = band == ErrorBand::d1 ? 1 : band == ErrorBand::d2 ? 2 : 6;
    std::map<std::pair<std::string, EntityCategory>, std::uint64_t> counts;
    for (const auto& r : scores) {
        if (r.outcome.is_exact() || r.outcome.is_no_match()) continue;
        if (band_of(r.outcome) != want) continue;
        ++counts[{r.system_id, r.category}];
    }
    std::map<std::string, CategoryCount> out;
    for (const auto& [key, count] : counts) {
        const auto& [system, category] = key;
        auto it = out.find(system);
        if (it == out.end()) {
            out[system] = {category, count};
            continue;
        }
        // higher count wins; ties go to the lexicographically first name
        if (count > it->second.count ||
            (count == it->second.count &&
             to_string(category) < to_string(it->second.category))) {
            it->second = {category, count};
        }
    }
    return out;
}

CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys,
                            CorrelationMethod method) {
    if (xs.size() != ys.size()) throw DegenerateInput("series lengths differ");
    if (xs.size() < 3) throw DegenerateInput("need at least 3 observations");
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(xs) || constant(ys)) throw DegenerateInput("constant series");

    CorrelationResult result;
    result.method = method;
    result.n = xs.size();
    if (method == CorrelationMethod::pearson) {
        result.coefficient = stats::pearson(xs, ys);
    } else {
        const auto rx = stats::average_ranks(xs);
        const auto ry = stats::average_ranks(ys);
        result.coefficient = stats::pearson(rx, ry);
    }
    result.p_value = stats::correlation_p_value(result.coefficient, result.n);
    return result;
}

LengthBinReport length_bin_analysis(std::span<const ScoreRecord> scores,
                                    const std::vector<Sample>& corpus, const TokenCounter& tokens,
                                    int k) {
    if (k < 1 || corpus.size() < static_cast<std::size_t>(k)) {
        throw InsufficientData("need at least " + std::to_string(k) + " samples for " +
                               std::to_string(k) + " bins");
    }
    const TokenCounter& counter = tokens ? tokens : default_token_count;

    struct Keyed {
        std::size_t tokens;
        const Sample* sample;
    };
    std::vector<Keyed> order;
    order.reserve(corpus.size());
    for (const auto& s : corpus) order.push_back({counter(s.text), &s});
    std::sort(order.begin(), order.end(), [](const Keyed& a, const Keyed& b) {
        if (a.tokens != b.tokens) return a.tokens < b.tokens;
        return a.sample->id < b.sample->id;
    });

    // contiguous equal-size bins, surplus to the earliest bins
    const std::size_t n = order.size();
    const auto kk = static_cast<std::size_t>(k);
    std::map<std::string_view, std::size_t> bin_of;
    LengthBinReport report;
    report.bins.resize(kk);
    std::size_t next = 0;
    for (std::size_t b = 0; b < kk; ++b) {
        std::size_t size = n / kk + (b < n % kk ? 1 : 0);
        auto& bin = report.bins[b];
        bin.sample_count = size;
        bin.min_tokens = order[next].tokens;
        for (std::size_t j = 0; j < size; ++j) {
            bin_of[order[next].sample->id] = b;
            bin.max_tokens = order[next].tokens;
            ++next;
        }
    }

    std::array<std::uint64_t, 3> zero{};
    std::vector<std::array<std::uint64_t, 3>> tallies(kk, zero);  // exact, modified, no_match
    std::vector<std::string> unknown;
    for (const auto& r : scores) {
        auto it = bin_of.find(r.sample_id);
        if (it == bin_of.end()) {
            unknown.push_back(r.sample_id);
            continue;
        }
        auto& t = tallies[it->second];
        if (r.outcome.is_exact()) ++t[0];
        else if (r.outcome.is_modified()) ++t[1];
        else ++t[2];
    }
    if (!unknown.empty()) {
        std::sort(unknown.begin(), unknown.end());
        unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
        throw UnknownSampleId(unknown, "scores reference samples outside the corpus");
    }

    for (std::size_t b = 0; b < kk; ++b) {
        auto& bin = report.bins[b];
        const auto total = tallies[b][0] + tallies[b][1] + tallies[b][2];
        bin.record_count = total;
        if (total == 0) continue;
        bin.accuracy_pct = 100.0 * static_cast<double>(tallies[b][0]) / static_cast<double>(total);
        bin.modified_pct = 100.0 * static_cast<double>(tallies[b][1]) / static_cast<double>(total);
        bin.no_match_pct = 100.0 * static_cast<double>(tallies[b][2]) / static_cast<double>(total);
    }
    return report;
}

CorrelationResult subtoken_error_correlation(
    std::span<const ScoreRecord> scores,
    const std::map<std::string, std::size_t>& entity_token_counts, EntityCategory category) {
    struct Tally {
        std::uint64_t errors = 0;
        std::uint64_t total = 0;
    };
    std::map<std::size_t, Tally> by_count;
    std::vector<std::string> missing;
    for (const auto& r : scores) {
        if (r.category != category) continue;
        auto it = entity_token_counts.find(r.sample_id);
        if (it == entity_token_counts.end()) {
            missing.push_back(r.sample_id);
            continue;
        }
        auto& t = by_count[it->second];
        ++t.total;
        if (!r.outcome.is_exact()) ++t.errors;
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        throw UnknownSampleId(missing, "token counts missing for scored samples");
    }

    std::vector<double> xs, ys;
    for (const auto& [count, tally] : by_count) {
        xs.push_back(static_cast<double>(count));
        ys.push_back(static_cast<double>(tally.errors) / static_cast<double>(tally.total));
    }
    return correlate(xs, ys, CorrelationMethod::pearson);
}

}  // namespace entity_guard
