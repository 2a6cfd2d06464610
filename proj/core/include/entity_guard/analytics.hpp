// Aggregate statistics over score records: accuracy tables with macro
// rows, error histograms by edit distance, per-band worst categories,
// correlations, and sentence-length bin studies.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entity_guard/corpus.hpp"
#include "entity_guard/scoring.hpp"

namespace entity_guard {

enum class TableAxis { by_category, by_direction };

std::string_view to_string(TableAxis axis);

struct EmptyGroup {
    std::string system_id;
    std::string key;
};

struct AggregateTable {
    TableAxis axis = TableAxis::by_category;
    std::vector<std::string> systems;  // sorted
    std::vector<std::string> keys;     // category names or "src-tgt" directions, sorted
    // accuracy percent per (system, key); a key missing for a system has no entry
    std::map<std::pair<std::string, std::string>, double> cells;
    std::map<std::string, double> macro_row;  // unweighted mean of a system's cells
    std::vector<EmptyGroup> missing;          // diagnostics for absent combinations

    std::optional<double> cell(const std::string& system, const std::string& key) const;
};

// Accuracy = 100 * exact / records per (system, category, direction) group,
// then averaged with equal weight over the other axis. Throws EmptyCorpus
// on empty input.
AggregateTable accuracy_table(std::span<const ScoreRecord> scores, TableAxis axis);

// Error bands: no-match plus Levenshtein distances 1..5 and >5.
inline constexpr std::size_t kHistogramBands = 7;
extern const std::array<std::string_view, kHistogramBands> kHistogramBandNames;

struct ErrorHistogram {
    // band counts per system: [no_match, d=1, d=2, d=3, d=4, d=5, d>5]
    std::map<std::string, std::array<std::uint64_t, kHistogramBands>> by_system;

    std::uint64_t total_errors(const std::string& system) const;
};

ErrorHistogram error_histogram(std::span<const ScoreRecord> scores);

enum class ErrorBand { d1, d2, gt5 };

std::string_view to_string(ErrorBand band);

struct CategoryCount {
    EntityCategory category = EntityCategory::alphanumeric;
    std::uint64_t count = 0;
};

// Per system, the category with the most errors in the band; ties broken
// by category name. Systems with no errors in the band are absent.
std::map<std::string, CategoryCount> top_error_category(std::span<const ScoreRecord> scores,
                                                        ErrorBand band);

enum class CorrelationMethod { pearson, spearman };

std::string_view to_string(CorrelationMethod method);

struct CorrelationResult {
    CorrelationMethod method = CorrelationMethod::pearson;
    double coefficient = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

// Pearson, or Spearman as Pearson over average ranks; two-sided p-value
// via the t transform. Throws DegenerateInput on length mismatch, n < 3,
// or a constant series.
CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys,
                            CorrelationMethod method);

struct LengthBin {
    std::size_t min_tokens = 0;
    std::size_t max_tokens = 0;
    std::size_t sample_count = 0;
    std::size_t record_count = 0;
    double accuracy_pct = 0.0;
    double modified_pct = 0.0;
    double no_match_pct = 0.0;  // the three percentages sum to 100 per bin
};

struct LengthBinReport {
    std::vector<LengthBin> bins;
};

// Sorts source sentences by token count (ties by sample id) into k
// contiguous bins of near-equal size (surplus to the earliest bins) and
// reports exact/modified/no-match percentages per bin.
LengthBinReport length_bin_analysis(std::span<const ScoreRecord> scores,
                                    const std::vector<Sample>& corpus,
                                    const TokenCounter& tokens = {}, int k = 5);

// Correlation between entity subtoken count and per-count error rate for
// one category. Token counts come from an external tokenizer sidecar.
CorrelationResult subtoken_error_correlation(
    std::span<const ScoreRecord> scores,
    const std::map<std::string, std::size_t>& entity_token_counts, EntityCategory category);

}  // namespace entity_guard
