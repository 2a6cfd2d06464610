#include <doctest.h>

#include <random>

#include "entity_guard/entities.hpp"
#include "entity_guard/pattern.hpp"
#include "entity_guard/unicode.hpp"
#include "test_util.hpp"

using namespace entity_guard;

namespace {

// Every entity string from the published error-example table, inside its
// full source sentence.
struct DetectCase {
    EntityCategory category;
    const char* text;
    const char* entity;
};

const DetectCase kDetectCases[] = {
    {EntityCategory::alphanumeric,
     "Gniazdo pająka, o symbolu tenotypic123CBSprk, wisiało pod niebem usianym szumami.",
     "tenotypic123CBSprk"},
    {EntityCategory::email,
     "Die sprechende Mandarine geschickt ein Bild an liebevollchenpinguin@aya.at.",
     "liebevollchenpinguin@aya.at"},
    {EntityCategory::iban,
     "Panie profesorze Janie Kowalski, może przesłać mi nową listę prac do sprawdzenia na konto "
     "o numerze PL60109010000000000000000000?",
     "PL60109010000000000000000000"},
    {EntityCategory::ip,
     "Wiatr gonił pożółkłe liście, aż mu się zadało z 192.168.1.108 i spróbowało wziąć pod nie "
     "chwytem.",
     "192.168.1.108"},
    {EntityCategory::isbn,
     "Podczas lekcji astronomii, Paweł natknął się na książkę o istocie czasoprzestrzeni, "
     "której ISBN 978-83-12-34567-8 zdradził tajemnicę kosmicznej harmonii.",
     "978-83-12-34567-8"},
    {EntityCategory::phone,
     "Die alten Ratten spielten Karten und diskutierten leidenschaftlich laut vor Telefonnummer "
     "+49 030 1234567890 verband 123politisch.",
     "49 030 1234567890"},
    {EntityCategory::social,
     "Przechodząc przez park, nagle usłyszałam @klimatyzacja śpiewającą piosenkę o letnim "
     "słońcu.",
     "@klimatyzacja"},
    {EntityCategory::url,
     "Die Katze las www.irgendwohin.com vor dem Frühstück und kraulte verschmitzt um "
     "Aufmerksamkeit.",
     "www.irgendwohin.com"},
};

}  // namespace

TEST_CASE("pattern registry is total and verbatim") {
    for (auto category : kAllCategories) {
        const auto& spec = pattern_for(category);
        CHECK(spec.category == category);
    }
    CHECK(pattern_for(EntityCategory::ip).pattern_text ==
          R"(\b\d{1,3}\.\d{1,3}\.\d{1,3}\.\d{1,3}\b)");
    CHECK(pattern_for(EntityCategory::iban).pattern_text ==
          R"(\b([A-Z]{2})[ \-]?([0-9]{2})[ \-]?([A-Z0-9]{9,30})\b)");
    CHECK(pattern_for(EntityCategory::emoji).pattern_text.empty());
    // the ISBN pattern needs lookahead and anchors; most others need
    // unicode property classes
    const auto& isbn = pattern_for(EntityCategory::isbn);
    const auto has = [&](const PatternSpec& s, EngineRequirement r) {
        return std::find(s.engine_requirements.begin(), s.engine_requirements.end(), r) !=
               s.engine_requirements.end();
    };
    CHECK(has(isbn, EngineRequirement::lookahead));
    CHECK(has(isbn, EngineRequirement::anchors));
    CHECK(has(pattern_for(EntityCategory::email), EngineRequirement::unicode_property_classes));
}

TEST_CASE("published error-table entities are detected in their sentences") {
    for (const auto& c : kDetectCases) {
        CAPTURE(to_string(c.category));
        const auto matches = detect_entities(c.text, c.category);
        REQUIRE(matches.size() == 1);
        CHECK(matches[0].surface == c.entity);
    }
}

TEST_CASE("spans index unicode scalars and cover the surface") {
    for (const auto& c : kDetectCases) {
        const auto matches = detect_entities(c.text, c.category);
        REQUIRE(matches.size() == 1);
        const auto cps = uni::decode_utf8(c.text);
        const auto& m = matches[0];
        REQUIRE(m.end <= cps.size());
        CHECK(uni::encode_utf8(std::u32string_view(cps).substr(m.begin, m.end - m.begin)) ==
              m.surface);
        CHECK_FALSE(m.surface.empty());
    }
}

TEST_CASE("every surface re-matches its own pattern in isolation") {
    for (const auto& c : kDetectCases) {
        if (c.category == EntityCategory::emoji) continue;
        const auto matches = detect_entities(c.text, c.category);
        REQUIRE(matches.size() == 1);
        const auto again = detect_entities(matches[0].surface, c.category);
        REQUIRE(again.size() == 1);
        CHECK(again[0].surface == matches[0].surface);
    }
}

TEST_CASE("matches are ordered, non-overlapping and deterministic") {
    const std::string text = "mail a@b.com then c@d.com then e@f.org";
    const auto first = detect_entities(text, EntityCategory::email);
    const auto second = detect_entities(text, EntityCategory::email);
    REQUIRE(first.size() == 3);
    CHECK(first[0].surface == "a@b.com");
    CHECK(first[1].surface == "c@d.com");
    CHECK(first[2].surface == "e@f.org");
    for (std::size_t i = 1; i < first.size(); ++i) {
        CHECK(first[i - 1].end <= first[i].begin);
    }
    CHECK(first == second);
}

TEST_CASE("detect on empty text") {
    CHECK(detect_entities("", EntityCategory::url).empty());
}

TEST_CASE("ip detection from the examples") {
    const auto matches = detect_entities(
        "Wiatr gonił … z 192.168.1.108 i …", EntityCategory::ip);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].surface == "192.168.1.108");
}

TEST_CASE("iban detection allows the two optional separators") {
    const auto dashed =
        detect_entities("konto DE-44-500105175407324931 bitte", EntityCategory::iban);
    REQUIRE(dashed.size() == 1);
    CHECK(dashed[0].surface == "DE-44-500105175407324931");
    const auto spaced =
        detect_entities("konto DE 44 500105175407324931 bitte", EntityCategory::iban);
    REQUIRE(spaced.size() == 1);
    CHECK(spaced[0].surface == "DE 44 500105175407324931");
}

TEST_CASE("isbn validation rejects digit runs that are not isbn shaped") {
    CHECK(detect_entities("order 97883123456789 now", EntityCategory::isbn).empty());
    CHECK(detect_entities("book 9788312345678 here", EntityCategory::isbn).size() == 1);
    CHECK(detect_entities("ISBN 978-83-12-34567-8.", EntityCategory::isbn).size() == 1);
    // label without the separating space cannot match
    CHECK(detect_entities("ISBN978-83-12-34567-8", EntityCategory::isbn).empty());
}

TEST_CASE("isbn label prefix positions the match but is not the surface") {
    const auto matches = detect_entities("ISBN: 978-0-306-40615-7 x", EntityCategory::isbn);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].surface == "978-0-306-40615-7");
}

TEST_CASE("emoji runs, joiners and modifiers") {
    auto one = detect_entities("Der Hund 🐕 bellt", EntityCategory::emoji);
    REQUIRE(one.size() == 1);
    CHECK(one[0].surface == "🐕");

    auto joined = detect_entities("family 👩‍👩‍👧 day", EntityCategory::emoji);
    REQUIRE(joined.size() == 1);
    CHECK(uni::count_code_points(joined[0].surface) == 5);  // three pictographs, two joiners

    auto toned = detect_entities("ok 👍🏽 sure", EntityCategory::emoji);
    REQUIRE(toned.size() == 1);
    CHECK(uni::count_code_points(toned[0].surface) == 2);

    auto adjacent = detect_entities("wow 😀😀", EntityCategory::emoji);
    REQUIRE(adjacent.size() == 1);  // maximal run
}

TEST_CASE("validate_single outcomes") {
    const auto ok = validate_single(
        "Panie profesorze … na konto o numerze PL60109010000000000000000000?",
        EntityCategory::iban);
    REQUIRE(ok.ok());
    CHECK(ok.entity->surface == "PL60109010000000000000000000");

    const auto zero = validate_single("no entity here.", EntityCategory::email);
    CHECK(zero.zero());
    CHECK_FALSE(zero.entity.has_value());

    const auto multi = validate_single("a@b.com and c@d.com", EntityCategory::email);
    CHECK(multi.multiple());
    CHECK(multi.match_count == 2);
}

TEST_CASE("pattern overrides swap the registry entry and reset restores it") {
    override_pattern(EntityCategory::ip, R"(\bIP\d+\b)");
    CHECK(detect_entities("node IP42 up", EntityCategory::ip).size() == 1);
    CHECK(detect_entities("1.2.3.4", EntityCategory::ip).empty());
    reset_patterns();
    CHECK(detect_entities("1.2.3.4", EntityCategory::ip).size() == 1);
}

TEST_CASE("detection properties hold on random text") {
    std::mt19937_64 rng(7);
    // mix fully random scalars with entity-shaped fragments so matches
    // actually occur
    const std::string fragments[] = {"a@b.io", "10.0.0.1", "@handle9", "www.x.de/p", "DE44",
                                     "978-83-12-34567-8", "x1y", "+48 22 123",  "🐕"};
    for (int i = 0; i < 120; ++i) {
        std::string text = uni::encode_utf8(test_util::random_unicode(rng, 40));
        for (std::uint64_t k = rng() % 4; k > 0; --k) {
            text += " " + fragments[rng() % std::size(fragments)] + " ";
            text += uni::encode_utf8(test_util::random_unicode(rng, 10));
        }
        for (auto category : kAllCategories) {
            const auto matches = detect_entities(text, category);
            // pure: identical input, identical output
            CHECK(matches == detect_entities(text, category));
            for (std::size_t m = 1; m < matches.size(); ++m) {
                CHECK(matches[m - 1].end <= matches[m].begin);  // non-overlapping, ordered
            }
            if (category == EntityCategory::emoji) continue;  // run-based matcher
            for (const auto& m : matches) {
                // each surface re-matches its own pattern in isolation
                const auto again = detect_entities(m.surface, category);
                REQUIRE_FALSE(again.empty());
                CHECK(again.front().surface == m.surface);
                CHECK(again.front().begin == 0);
            }
        }
    }
}
