// Edit distance and corpus scoring throughput.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "entity_guard/scoring.hpp"

using namespace entity_guard;

namespace {

std::string random_word(std::mt19937_64& rng, std::size_t length) {
    std::string out;
    for (std::size_t i = 0; i < length; ++i) {
        out.push_back(static_cast<char>('a' + rng() % 26));
    }
    return out;
}

void Levenshtein(benchmark::State& state) {
    std::mt19937_64 rng(5);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_word(rng, n);
    const auto b = random_word(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(levenshtein(a, b));
    }
}

void ScoreCorpus(benchmark::State& state) {
    std::mt19937_64 rng(6);
    std::vector<Sample> corpus;
    std::vector<TranslationRecord> translations;
    const auto n = static_cast<std::size_t>(state.range(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::string text = "host " + random_word(rng, 6) + " 10.7." +
                           std::to_string(i % 250) + "." + std::to_string(i % 199) + " live";
        const auto gate = validate_single(text, EntityCategory::ip);
        Sample s;
        s.id = "en-ip-00-" + std::to_string(i);
        s.language = LanguageCode::en;
        s.category = EntityCategory::ip;
        s.text = text;
        s.entity = *gate.entity;
        // a third echo, a third perturbed, a third dropped
        std::string target = text;
        if (i % 3 == 1) target[6 + rng() % 4] = 'q';
        if (i % 3 == 2) target = "nichts weiter hier";
        translations.push_back({s.id, {LanguageCode::en, LanguageCode::de}, "bench", target});
        corpus.push_back(std::move(s));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(score_corpus(corpus, translations));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(Levenshtein)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(ScoreCorpus)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
