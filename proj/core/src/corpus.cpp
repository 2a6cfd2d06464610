#include "entity_guard/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "entity_guard/errors.hpp"
#include "entity_guard/unicode.hpp"

namespace entity_guard {

namespace {

constexpr std::array<std::string_view, 4> kLanguageNames = {"en", "de", "pl", "uk"};

// Unbiased bounded draw on top of mt19937_64, which is bit-exact across
// platforms (std::uniform_int_distribution is not).
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

struct IndexedText {
    std::size_t index;       // position in the eligible list
    std::size_t length;      // code point count
    const std::string* text;
};

bool indexed_less(const IndexedText& a, const IndexedText& b) {
    if (a.length != b.length) return a.length < b.length;
    if (*a.text != *b.text) return *a.text < *b.text;
    return a.index < b.index;
}

// Contiguous partition: sizes differ by at most one, first (n mod k)
// buckets take the surplus.
std::vector<std::size_t> bucket_sizes(std::size_t n, int k) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), n / static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n % static_cast<std::size_t>(k); ++i) ++sizes[i];
    return sizes;
}

std::string trim_trailing_whitespace(std::string_view text) {
    std::u32string cps = uni::decode_utf8(text);
    while (!cps.empty() && uni::is_whitespace(cps.back())) cps.pop_back();
    return uni::encode_utf8(cps);
}

bool is_blank(std::string_view text) {
    for (char32_t cp : uni::decode_utf8(text)) {
        if (!uni::is_whitespace(cp)) return false;
    }
    return true;
}

std::string format_sample_id(LanguageCode language, EntityCategory category, std::size_t bucket,
                             std::size_t index) {
    char buf[48];
    std::string id;
    id += to_string(language);
    id += '-';
    id += to_string(category);
    std::snprintf(buf, sizeof buf, "-%02zu-%03zu", bucket, index);
    id += buf;
    return id;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    out.count = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size()));
    return out;
}

}  // namespace

std::string_view to_string(LanguageCode language) {
    return kLanguageNames[static_cast<std::size_t>(language)];
}

std::optional<LanguageCode> language_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kLanguageNames.size(); ++i) {
        if (kLanguageNames[i] == name) return kAllLanguages[i];
    }
    return std::nullopt;
}

std::string_view to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::language_mismatch: return "language_mismatch";
        case RejectReason::zero_entities: return "zero_entities";
        case RejectReason::multiple_entities: return "multiple_entities";
        case RejectReason::grammar_fail: return "grammar_fail";
        case RejectReason::remark_only: return "remark_only";
    }
    return {};
}

std::string strip_generation_remarks(std::string_view text) {
    const auto pos = text.find("\n\n");
    if (pos == std::string_view::npos) return std::string(text);
    return trim_trailing_whitespace(text.substr(0, pos));
}

std::vector<std::vector<std::string>> bucket_by_length(std::vector<std::string> sentences, int k) {
    if (k < 1) throw InsufficientInput("bucket count must be positive");
    if (sentences.size() < static_cast<std::size_t>(k)) {
        throw InsufficientInput("need at least " + std::to_string(k) + " sentences for " +
                                std::to_string(k) + " buckets, got " +
                                std::to_string(sentences.size()));
    }
    std::vector<IndexedText> order;
    order.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        order.push_back({i, uni::count_code_points(sentences[i]), &sentences[i]});
    }
    std::sort(order.begin(), order.end(), indexed_less);

    std::vector<std::vector<std::string>> buckets(static_cast<std::size_t>(k));
    const auto sizes = bucket_sizes(sentences.size(), k);
    std::size_t next = 0;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        buckets[b].reserve(sizes[b]);
        for (std::size_t j = 0; j < sizes[b]; ++j) {
            buckets[b].push_back(std::move(*order[next++].text));
        }
    }
    return buckets;
}

BuildResult build_corpus(const std::vector<CandidateSentence>& candidates,
                         const CorpusBuildConfig& config, const LanguagePredicate& language_ok,
                         const GrammarPredicate& grammar_ok) {
    if (config.bucket_count < 1 || config.per_bucket < 1) {
        throw InsufficientInput("bucket_count and per_bucket must be positive");
    }

    BuildResult result;

    // (i) strip remarks, (ii) language filter.
    struct Eligible {
        std::string text;
        const CandidateSentence* source;
    };
    std::vector<Eligible> eligible;
    eligible.reserve(candidates.size());
    for (const auto& cand : candidates) {
        std::string stripped = strip_generation_remarks(cand.text);
        if (stripped.empty() || is_blank(stripped)) {
            result.rejects.push_back({cand.text, RejectReason::remark_only});
            continue;
        }
        if (config.language_filter_enabled && language_ok &&
            !language_ok(stripped, cand.language)) {
            result.rejects.push_back({std::move(stripped), RejectReason::language_mismatch});
            continue;
        }
        eligible.push_back({std::move(stripped), &cand});
    }

    const auto k = static_cast<std::size_t>(config.bucket_count);
    if (eligible.size() < k) {
        throw InsufficientInput("only " + std::to_string(eligible.size()) +
                                " candidates survive filtering; need at least " +
                                std::to_string(k));
    }

    // (iii) sort by length and partition into contiguous buckets.
    std::vector<IndexedText> order;
    order.reserve(eligible.size());
    for (std::size_t i = 0; i < eligible.size(); ++i) {
        order.push_back({i, uni::count_code_points(eligible[i].text), &eligible[i].text});
    }
    std::sort(order.begin(), order.end(), indexed_less);
    const auto sizes = bucket_sizes(order.size(), config.bucket_count);

    // (iv) seeded sampling without replacement inside each bucket, with
    // rejection: a drawn sentence failing the entity gate or the grammar
    // predicate is logged and the draw continues.
    std::mt19937_64 rng(config.rng_seed);
    std::size_t bucket_start = 0;
    for (std::size_t b = 0; b < k; ++b) {
        std::vector<std::size_t> pool(sizes[b]);
        for (std::size_t j = 0; j < sizes[b]; ++j) pool[j] = bucket_start + j;
        bucket_start += sizes[b];

        std::size_t accepted = 0;
        while (accepted < static_cast<std::size_t>(config.per_bucket)) {
            if (pool.empty()) {
                throw BucketExhausted(static_cast<int>(b),
                                      "bucket " + std::to_string(b) + " exhausted after " +
                                          std::to_string(accepted) + "/" +
                                          std::to_string(config.per_bucket) + " samples");
            }
            const std::size_t pick = bounded_draw(rng, pool.size());
            const Eligible& e = eligible[order[pool[pick]].index];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));

            auto gate = validate_single(e.text, e.source->category);
            if (!gate.ok()) {
                result.rejects.push_back({e.text, gate.zero() ? RejectReason::zero_entities
                                                              : RejectReason::multiple_entities});
                continue;
            }
            if (config.grammar_filter_enabled && grammar_ok && !grammar_ok(e.text)) {
                result.rejects.push_back({e.text, RejectReason::grammar_fail});
                continue;
            }
            Sample sample;
            sample.id = format_sample_id(e.source->language, e.source->category, b, accepted);
            sample.language = e.source->language;
            sample.category = e.source->category;
            sample.text = e.text;
            sample.entity = std::move(*gate.entity);
            result.samples.push_back(std::move(sample));
            ++accepted;
        }
    }
    return result;
}

std::size_t default_token_count(std::string_view text) {
    const std::u32string cps = uni::decode_utf8(text);
    std::size_t tokens = 0;
    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        while (i < n && uni::is_whitespace(cps[i])) ++i;
        if (i >= n) break;
        std::size_t j = i;
        while (j < n && !uni::is_whitespace(cps[j])) ++j;
        // Peel leading and trailing punctuation into their own tokens;
        // interior punctuation (decimals, URLs, dashes) stays attached.
        std::size_t lo = i, hi = j;
        while (lo < hi && uni::is_punctuation(cps[lo])) {
            ++tokens;
            ++lo;
        }
        std::size_t trailing = 0;
        while (hi > lo && uni::is_punctuation(cps[hi - 1])) {
            ++trailing;
            --hi;
        }
        if (hi > lo) ++tokens;
        tokens += trailing;
        i = j;
    }
    return tokens;
}

CorpusStats corpus_stats(const std::vector<Sample>& corpus, const TokenCounter& tokens) {
    if (corpus.empty()) throw EmptyCorpus("corpus_stats requires a non-empty corpus");
    const TokenCounter& counter = tokens ? tokens : default_token_count;

    CorpusStats stats;
    stats.sample_count = corpus.size();

    std::vector<double> all_tokens, all_entity;
    std::map<LanguageCode, std::vector<double>> lang_tokens, lang_entity;
    std::map<EntityCategory, std::vector<double>> cat_tokens, cat_entity;
    for (const auto& s : corpus) {
        const auto t = static_cast<double>(counter(s.text));
        const auto e = static_cast<double>(uni::count_code_points(s.entity.surface));
        all_tokens.push_back(t);
        all_entity.push_back(e);
        lang_tokens[s.language].push_back(t);
        lang_entity[s.language].push_back(e);
        cat_tokens[s.category].push_back(t);
        cat_entity[s.category].push_back(e);
    }
    stats.tokens_overall = mean_std(all_tokens);
    stats.entity_chars_overall = mean_std(all_entity);
    for (const auto& [lang, vals] : lang_tokens) stats.tokens_by_language[lang] = mean_std(vals);
    for (const auto& [lang, vals] : lang_entity)
        stats.entity_chars_by_language[lang] = mean_std(vals);
    for (const auto& [cat, vals] : cat_tokens) stats.tokens_by_category[cat] = mean_std(vals);
    for (const auto& [cat, vals] : cat_entity) stats.entity_chars_by_category[cat] = mean_std(vals);
    return stats;
}

}  // namespace entity_guard
