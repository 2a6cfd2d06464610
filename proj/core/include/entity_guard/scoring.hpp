// Classification of translations: exact transfer, modified (with edit
// distance), or no-match. Comparisons are code-point exact; no
// normalization or case folding anywhere.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entity_guard/corpus.hpp"
#include "entity_guard/entities.hpp"
#include "entity_guard/gateway.hpp"

namespace entity_guard {

struct TransferOutcome {
    enum class Kind { exact, modified, no_match };

    Kind kind = Kind::no_match;
    std::uint32_t distance = 0;  // >= 1 iff kind == modified

    static TransferOutcome exact() { return {Kind::exact, 0}; }
    static TransferOutcome modified(std::uint32_t d) { return {Kind::modified, d}; }
    static TransferOutcome no_match() { return {Kind::no_match, 0}; }

    bool is_exact() const { return kind == Kind::exact; }
    bool is_modified() const { return kind == Kind::modified; }
    bool is_no_match() const { return kind == Kind::no_match; }
    bool operator==(const TransferOutcome&) const = default;
};

std::string_view to_string(TransferOutcome::Kind kind);
std::optional<TransferOutcome::Kind> outcome_kind_from_string(std::string_view name);

struct ScoreRecord {
    std::string sample_id;
    std::string system_id;
    Direction direction;
    EntityCategory category = EntityCategory::alphanumeric;
    std::string source_entity;
    TransferOutcome outcome;
    std::optional<std::string> matched_target_entity;  // absent iff no_match
};

// Minimum number of single-code-point insertions, deletions and
// substitutions transforming a into b; unit costs.
std::uint32_t levenshtein(std::u32string_view a, std::u32string_view b);
std::uint32_t levenshtein(std::string_view a_utf8, std::string_view b_utf8);

struct PairScore {
    TransferOutcome outcome;
    std::optional<std::string> matched_target_entity;
};

// Detects entities of the sample's category in the target text. Any
// surface equal to the source entity wins (exact transfer); otherwise the
// minimum-distance match, leftmost on ties; no detected entity is a
// no-match.
PairScore score_pair(const Sample& sample, std::string_view target_text);

// One ScoreRecord per TranslationRecord, ordered by
// (system_id, direction, sample_id). Throws UnknownSampleId listing every
// translation that does not join to the corpus.
std::vector<ScoreRecord> score_corpus(const std::vector<Sample>& corpus,
                                      const std::vector<TranslationRecord>& translations);

}  // namespace entity_guard
