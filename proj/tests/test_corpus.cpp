#include <doctest.h>

#include <random>
#include <set>

#include "entity_guard/corpus.hpp"
#include "entity_guard/errors.hpp"
#include "entity_guard/records.hpp"
#include "entity_guard/unicode.hpp"
#include "test_util.hpp"

using namespace entity_guard;

namespace {

// Synthetic candidates: one IP entity each, padded to spread lengths.
std::vector<CandidateSentence> synthetic_candidates(std::size_t count) {
    std::vector<CandidateSentence> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string pad(i % 160, 'x');
        std::string text = "Server " + pad + " at 10.0." + std::to_string(i % 200) + "." +
                           std::to_string(i % 250) + " answered.";
        out.push_back({std::move(text), LanguageCode::en, EntityCategory::ip});
    }
    return out;
}

}  // namespace

TEST_CASE("strip_generation_remarks") {
    CHECK(strip_generation_remarks(
              "Satz mit 192.168.1.1.\n\n(English: Sentence with 192.168.1.1.)") ==
          "Satz mit 192.168.1.1.");
    CHECK(strip_generation_remarks("plain sentence") == "plain sentence");
    CHECK(strip_generation_remarks("a\n\nb\n\nc") == "a");
    CHECK(strip_generation_remarks("trailing  \n\nremark") == "trailing");
    CHECK(strip_generation_remarks("\n\nonly remark") == "");
}

TEST_CASE("bucket_by_length equal division") {
    std::vector<std::string> sentences;
    for (int i = 0; i < 40; ++i) sentences.push_back(std::string(1 + i % 37, 'a'));
    const auto buckets = bucket_by_length(sentences, 20);
    REQUIRE(buckets.size() == 20);
    for (const auto& b : buckets) CHECK(b.size() == 2);
}

TEST_CASE("bucket_by_length surplus goes to the first buckets") {
    std::vector<std::string> sentences = {"aaaa", "a", "aa", "aaaaaa", "aaa", "aaaaa", "aaaaaaa"};
    const auto buckets = bucket_by_length(sentences, 3);
    REQUIRE(buckets.size() == 3);
    CHECK(buckets[0].size() == 3);
    CHECK(buckets[1].size() == 2);
    CHECK(buckets[2].size() == 2);
}

TEST_CASE("bucket_by_length sorts ascending by code point count") {
    std::vector<std::string> sentences = {"ééééé", "a", "bbb"};  // lengths 5, 1, 3
    const auto buckets = bucket_by_length(sentences, 3);
    REQUIRE(buckets.size() == 3);
    CHECK(buckets[0] == std::vector<std::string>{"a"});
    CHECK(buckets[1] == std::vector<std::string>{"bbb"});
    CHECK(buckets[2] == std::vector<std::string>{"ééééé"});
}

TEST_CASE("bucket boundaries are monotone and concatenation is the sorted sequence") {
    std::mt19937_64 rng(3);
    std::vector<std::string> sentences;
    for (int i = 0; i < 157; ++i) {
        sentences.push_back(std::string(1 + rng() % 60, 'a' + static_cast<char>(rng() % 26)));
    }
    const auto buckets = bucket_by_length(sentences, 7);
    std::size_t total = 0;
    for (std::size_t b = 1; b < buckets.size(); ++b) {
        CHECK(uni::count_code_points(buckets[b - 1].back()) <=
              uni::count_code_points(buckets[b].front()));
    }
    std::vector<std::string> concat;
    for (const auto& b : buckets) {
        total += b.size();
        concat.insert(concat.end(), b.begin(), b.end());
    }
    CHECK(total == sentences.size());
    CHECK(std::is_sorted(concat.begin(), concat.end(),
                         [](const std::string& a, const std::string& b) {
                             return uni::count_code_points(a) < uni::count_code_points(b);
                         }));
}

TEST_CASE("bucket_by_length wants at least k sentences") {
    CHECK_THROWS_AS(bucket_by_length({"a", "b"}, 3), InsufficientInput);
}

TEST_CASE("build_corpus produces exactly bucket_count * per_bucket valid samples") {
    CorpusBuildConfig config;
    config.bucket_count = 10;
    config.per_bucket = 5;
    config.rng_seed = 42;
    const auto result = build_corpus(synthetic_candidates(400), config);
    REQUIRE(result.samples.size() == 50);
    std::set<std::string> ids;
    for (const auto& s : result.samples) {
        const auto gate = validate_single(s.text, s.category);
        REQUIRE(gate.ok());
        CHECK(gate.entity->surface == s.entity.surface);
        ids.insert(s.id);
    }
    CHECK(ids.size() == 50);  // stable unique ids
}

TEST_CASE("build_corpus is deterministic per seed and varies across seeds") {
    const auto candidates = synthetic_candidates(400);
    CorpusBuildConfig config;
    config.bucket_count = 10;
    config.per_bucket = 5;
    config.rng_seed = 1;
    const auto a = build_corpus(candidates, config);
    const auto b = build_corpus(candidates, config);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].id == b.samples[i].id);
        CHECK(a.samples[i].text == b.samples[i].text);
    }
    config.rng_seed = 2;
    const auto c = build_corpus(candidates, config);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (a.samples[i].text != c.samples[i].text) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("build_corpus rejection log carries reasons") {
    std::vector<CandidateSentence> candidates = synthetic_candidates(80);
    candidates.push_back({"no entity at all here", LanguageCode::en, EntityCategory::ip});
    candidates.push_back({"two 1.2.3.4 and 5.6.7.8 inside", LanguageCode::en, EntityCategory::ip});
    candidates.push_back({"\n\npure remark", LanguageCode::en, EntityCategory::ip});
    CorpusBuildConfig config;
    config.bucket_count = 1;
    config.per_bucket = 80;  // every valid candidate, so the invalid ones get drawn too
    config.rng_seed = 9;
    const auto result = build_corpus(candidates, config);
    CHECK(result.samples.size() == 80);
    std::set<std::string> reasons;
    for (const auto& r : result.rejects) reasons.insert(std::string(to_string(r.reason)));
    CHECK(reasons.contains("zero_entities"));
    CHECK(reasons.contains("multiple_entities"));
    CHECK(reasons.contains("remark_only"));
}

TEST_CASE("build_corpus applies the external predicates and logs their rejects") {
    auto candidates = synthetic_candidates(60);
    CorpusBuildConfig config;
    config.bucket_count = 2;
    config.per_bucket = 10;
    config.rng_seed = 5;
    // language predicate rejects padded sentences of odd pad length
    const LanguagePredicate lang_ok = [](std::string_view text, LanguageCode) {
        return uni::count_code_points(text) % 2 == 0;
    };
    std::size_t grammar_calls = 0;
    const GrammarPredicate grammar_ok = [&](std::string_view) {
        return ++grammar_calls % 7 != 0;  // deterministic occasional rejections
    };
    const auto result = build_corpus(candidates, config, lang_ok, grammar_ok);
    CHECK(result.samples.size() == 20);
    bool saw_language = false, saw_grammar = false;
    for (const auto& r : result.rejects) {
        if (r.reason == RejectReason::language_mismatch) saw_language = true;
        if (r.reason == RejectReason::grammar_fail) saw_grammar = true;
    }
    CHECK(saw_language);
    CHECK(saw_grammar);
}

TEST_CASE("build_corpus signals exhausted buckets") {
    std::vector<CandidateSentence> candidates;
    for (int i = 0; i < 30; ++i) {
        candidates.push_back({"nothing useful " + std::string(i, 'y'), LanguageCode::en,
                              EntityCategory::ip});
    }
    CorpusBuildConfig config;
    config.bucket_count = 3;
    config.per_bucket = 5;
    CHECK_THROWS_AS(build_corpus(candidates, config), BucketExhausted);
}

TEST_CASE("default_token_count peels edge punctuation only") {
    CHECK(default_token_count("a b c") == 3);
    CHECK(default_token_count("Hello, world!") == 4);
    CHECK(default_token_count("pi is 3.14 now") == 4);
    CHECK(default_token_count("see www.example.org/page today.") == 4);
    CHECK(default_token_count("(quoted)") == 3);
    CHECK(default_token_count("") == 0);
    CHECK(default_token_count("  spaced   out  ") == 2);
}

TEST_CASE("corpus_stats on a single tiny sample") {
    Sample s;
    s.id = "en-ip-00-000";
    s.language = LanguageCode::en;
    s.category = EntityCategory::ip;
    s.text = "a b c";
    s.entity = {EntityCategory::ip, "b", 2, 3};
    const auto stats = corpus_stats({s});
    CHECK(stats.sample_count == 1);
    CHECK(stats.tokens_overall.mean == doctest::Approx(3.0));
    CHECK(stats.tokens_overall.stddev == doctest::Approx(0.0));
    CHECK(stats.entity_chars_overall.mean == doctest::Approx(1.0));
    CHECK(stats.tokens_by_language.at(LanguageCode::en).count == 1);
    CHECK(stats.tokens_by_category.at(EntityCategory::ip).mean == doctest::Approx(3.0));
}

TEST_CASE("corpus_stats uses the population formula") {
    std::vector<Sample> corpus;
    for (int i = 0; i < 2; ++i) {
        Sample s;
        s.id = "en-ip-00-00" + std::to_string(i);
        s.language = LanguageCode::en;
        s.category = EntityCategory::ip;
        s.text = i == 0 ? "a b" : "a b c d";  // token counts 2 and 4
        s.entity = {EntityCategory::ip, "a", 0, 1};
        corpus.push_back(std::move(s));
    }
    const auto stats = corpus_stats(corpus);
    CHECK(stats.tokens_overall.mean == doctest::Approx(3.0));
    CHECK(stats.tokens_overall.stddev == doctest::Approx(1.0));  // population, not sqrt(2)
}

TEST_CASE("corpus_stats rejects an empty corpus") {
    CHECK_THROWS_AS(corpus_stats({}), EmptyCorpus);
}
