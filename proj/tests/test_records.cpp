#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "entity_guard/errors.hpp"
#include "entity_guard/records.hpp"
#include "entity_guard/unicode.hpp"
#include "test_util.hpp"

using namespace entity_guard;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static unsigned counter = 0;
        path = fs::temp_directory_path() /
               ("eg_records_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("corpus records survive a write/read cycle with unicode intact") {
    std::mt19937_64 rng(53);
    TempDir dir;
    std::vector<Sample> corpus;
    for (int i = 0; i < 25; ++i) {
        // sentence with one ip entity plus random unicode padding
        std::string pad = uni::encode_utf8(test_util::random_u32(rng, 12, U"äöüßżź🐕 "));
        while (pad.find('\n') != std::string::npos) pad.erase(pad.find('\n'), 1);
        Sample s;
        s.id = "de-ip-00-" + std::to_string(i);
        s.language = LanguageCode::de;
        s.category = EntityCategory::ip;
        s.text = "Knoten " + pad + " 10.1.2." + std::to_string(i) + " da";
        const auto gate = validate_single(s.text, EntityCategory::ip);
        REQUIRE(gate.ok());
        s.entity = *gate.entity;
        corpus.push_back(std::move(s));
    }
    records::write_corpus(dir.file("c.jsonl"), corpus);
    const auto back = records::read_corpus(dir.file("c.jsonl"));
    REQUIRE(back.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(back[i].id == corpus[i].id);
        CHECK(back[i].text == corpus[i].text);
        CHECK(back[i].entity == corpus[i].entity);
        CHECK(back[i].language == corpus[i].language);
    }
}

TEST_CASE("corpus reader verifies the entity span against the text") {
    TempDir dir;
    std::ofstream f(dir.file("bad.jsonl"));
    f << R"({"id":"x","language":"en","category":"ip","text":"a 1.2.3.4 b","entity_text":"9.9.9.9","entity_start":2,"entity_end":9})"
      << "\n";
    f.close();
    CHECK_THROWS_AS(records::read_corpus(dir.file("bad.jsonl")), SchemaError);
}

TEST_CASE("score records round-trip including optional fields") {
    TempDir dir;
    std::vector<ScoreRecord> scores;
    ScoreRecord exact;
    exact.sample_id = "a";
    exact.system_id = "sys";
    exact.direction = {LanguageCode::en, LanguageCode::de};
    exact.category = EntityCategory::url;
    exact.outcome = TransferOutcome::exact();
    exact.matched_target_entity = "www.x.org";
    scores.push_back(exact);
    ScoreRecord modified = exact;
    modified.sample_id = "b";
    modified.outcome = TransferOutcome::modified(3);
    modified.matched_target_entity = "www.y.org";
    scores.push_back(modified);
    ScoreRecord none = exact;
    none.sample_id = "c";
    none.outcome = TransferOutcome::no_match();
    none.matched_target_entity.reset();
    scores.push_back(none);

    records::write_scores(dir.file("s.jsonl"), scores);
    const auto back = records::read_scores(dir.file("s.jsonl"));
    REQUIRE(back.size() == 3);
    CHECK(back[0].outcome.is_exact());
    CHECK(back[1].outcome.is_modified());
    CHECK(back[1].outcome.distance == 3);
    CHECK(*back[1].matched_target_entity == "www.y.org");
    CHECK(back[2].outcome.is_no_match());
    CHECK_FALSE(back[2].matched_target_entity.has_value());

    // the distance field appears exactly on modified rows
    const auto lines = records::read_lines(dir.file("s.jsonl"));
    CHECK(lines[0].find("distance") == std::string::npos);
    CHECK(lines[1].find("\"distance\":3") != std::string::npos);
}

TEST_CASE("schema errors carry the file and line") {
    TempDir dir;
    std::ofstream f(dir.file("t.jsonl"));
    f << R"({"sample_id":"a","source_lang":"en","target_lang":"de","system_id":"s","target_text":"x"})"
      << "\n";
    f << R"({"sample_id":"b"})" << "\n";
    f.close();
    try {
        records::read_translations(dir.file("t.jsonl"));
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("token sidecar round-trips") {
    TempDir dir;
    std::map<std::string, std::size_t> counts = {{"a", 3}, {"b", 17}};
    records::write_token_counts(dir.file("tc.jsonl"), counts);
    CHECK(records::read_token_counts(dir.file("tc.jsonl")) == counts);
}

TEST_CASE("atomic writes replace the target completely") {
    TempDir dir;
    records::atomic_write_file(dir.file("out.txt"), "first version");
    records::atomic_write_file(dir.file("out.txt"), "second");
    CHECK(records::read_file(dir.file("out.txt")) == "second");
    CHECK_FALSE(fs::exists(dir.file("out.txt.tmp")));
}

TEST_CASE("missing files raise IoError") {
    CHECK_THROWS_AS(records::read_lines("/nonexistent/nowhere.jsonl"), IoError);
}
