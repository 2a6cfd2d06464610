// Throughput of the pattern engine per category on sentence-sized inputs.
#include <benchmark/benchmark.h>

#include <string>

#include "entity_guard/entities.hpp"

using namespace entity_guard;

namespace {

const std::string kSentences[] = {
    "Gniazdo pająka, o symbolu tenotypic123CBSprk, wisiało pod niebem usianym szumami.",
    "Die sprechende Mandarine geschickt ein Bild an liebevollchenpinguin@aya.at.",
    "Panie profesorze, proszę przesłać listę na konto o numerze PL60109010000000000000000000?",
    "Wiatr gonił pożółkłe liście, aż mu się zadało z 192.168.1.108 i spróbowało.",
    "Podczas lekcji astronomii Paweł znalazł książkę, której ISBN 978-83-12-34567-8 lśnił.",
    "Die alten Ratten diskutierten laut vor Telefonnummer +49 030 1234567890 verband.",
    "Przechodząc przez park, nagle usłyszałam @klimatyzacja śpiewającą piosenkę.",
    "Die Katze las www.irgendwohin.com vor dem Frühstück und kraulte verschmitzt.",
    "Чистий текст без жодних сутностей, просто довше речення для порівняння швидкості.",
};

void DetectCategory(benchmark::State& state) {
    const auto category = static_cast<EntityCategory>(state.range(0));
    std::size_t hits = 0;
    for (auto _ : state) {
        for (const auto& sentence : kSentences) {
            hits += detect_entities(sentence, category).size();
        }
    }
    benchmark::DoNotOptimize(hits);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(std::size(kSentences)));
}

void ValidateSingleGate(benchmark::State& state) {
    std::size_t ok = 0;
    for (auto _ : state) {
        for (const auto& sentence : kSentences) {
            for (auto category : kAllCategories) {
                ok += validate_single(sentence, category).ok();
            }
        }
    }
    benchmark::DoNotOptimize(ok);
}

}  // namespace

BENCHMARK(DetectCategory)->DenseRange(0, 8)->Unit(benchmark::kMicrosecond);
BENCHMARK(ValidateSingleGate)->Unit(benchmark::kMicrosecond);
