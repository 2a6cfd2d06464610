// Representative-sample selection over raw candidate sentences: remark
// stripping, language filtering, length bucketing, seeded per-bucket
// sampling gated on single-entity validation, and corpus statistics.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entity_guard/entities.hpp"

namespace entity_guard {

enum class LanguageCode { en, de, pl, uk };

inline constexpr std::array<LanguageCode, 4> kAllLanguages = {
    LanguageCode::en, LanguageCode::de, LanguageCode::pl, LanguageCode::uk};

std::string_view to_string(LanguageCode language);
std::optional<LanguageCode> language_from_string(std::string_view name);

struct CandidateSentence {
    std::string text;
    LanguageCode language = LanguageCode::en;  // expected language
    EntityCategory category = EntityCategory::alphanumeric;  // expected category
};

struct Sample {
    std::string id;  // "{language}-{category}-{bucket:02}-{index:03}"
    LanguageCode language = LanguageCode::en;
    EntityCategory category = EntityCategory::alphanumeric;
    std::string text;
    EntityMatch entity;
};

struct CorpusBuildConfig {
    int bucket_count = 20;
    int per_bucket = 50;
    std::uint64_t rng_seed = 0;
    bool language_filter_enabled = true;
    bool grammar_filter_enabled = true;
};

// External predicates. The toolkit never implements language detection or
// grammar checking itself; see gateway.hpp for command/verdict adapters.
using LanguagePredicate = std::function<bool(std::string_view text, LanguageCode expected)>;
using GrammarPredicate = std::function<bool(std::string_view text)>;

// Token counter used for statistics; pluggable so external tokenizers can
// be swapped in through sidecar files.
using TokenCounter = std::function<std::size_t(std::string_view text)>;

// Whitespace split, then leading/trailing punctuation peeled into their
// own tokens; inner punctuation (decimals, URLs, IBAN groups) stays put.
std::size_t default_token_count(std::string_view text);

// Prefix of text before the first "\n\n", trailing whitespace trimmed;
// identity when there is no double newline.
std::string strip_generation_remarks(std::string_view text);

// Sorts ascending by code point count (ties: text, then input order) and
// partitions into k contiguous buckets whose sizes differ by at most one;
// the first (n mod k) buckets take the surplus. Throws InsufficientInput
// when there are fewer sentences than buckets.
std::vector<std::vector<std::string>> bucket_by_length(std::vector<std::string> sentences, int k);

enum class RejectReason {
    language_mismatch,
    zero_entities,
    multiple_entities,
    grammar_fail,
    remark_only,
};

std::string_view to_string(RejectReason reason);

struct RejectedCandidate {
    std::string text;
    RejectReason reason = RejectReason::zero_entities;
};

struct BuildResult {
    std::vector<Sample> samples;
    std::vector<RejectedCandidate> rejects;
};

// The full selection pipeline: strip remarks, filter by language, bucket
// by length, then draw uniformly without replacement inside each bucket
// (seeded, deterministic) until per_bucket sentences pass the single-
// entity gate and the grammar predicate. Produces exactly
// bucket_count * per_bucket samples or throws BucketExhausted.
BuildResult build_corpus(const std::vector<CandidateSentence>& candidates,
                         const CorpusBuildConfig& config,
                         const LanguagePredicate& language_ok = {},
                         const GrammarPredicate& grammar_ok = {});

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;  // population formula (divide by N)
    std::size_t count = 0;
};

struct CorpusStats {
    std::size_t sample_count = 0;
    MeanStd tokens_overall;
    std::map<LanguageCode, MeanStd> tokens_by_language;
    std::map<EntityCategory, MeanStd> tokens_by_category;
    MeanStd entity_chars_overall;
    std::map<LanguageCode, MeanStd> entity_chars_by_language;
    std::map<EntityCategory, MeanStd> entity_chars_by_category;
};

// Token-count and entity-length statistics. Standard deviations use the
// population formula. Throws EmptyCorpus on empty input.
CorpusStats corpus_stats(const std::vector<Sample>& corpus, const TokenCounter& tokens = {});

}  // namespace entity_guard
