// End-to-end checks of the command line over a small synthetic corpus:
// every stage runs on the files the previous stage produced.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "entity_guard/records.hpp"
#include "entity_guard/unicode.hpp"

using namespace entity_guard;
namespace fs = std::filesystem;

#ifndef ENTITY_GUARD_CLI_PATH
#define ENTITY_GUARD_CLI_PATH "entity-guard"
#endif

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static unsigned counter = 0;
        path = fs::temp_directory_path() /
               ("eg_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ENTITY_GUARD_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_candidates_file(const std::string& path, int count) {
    std::ofstream f(path);
    for (int i = 0; i < count; ++i) {
        std::string pad(i % 40, 'w');
        f << R"({"text":"Box )" << pad << " at 10.2." << i % 100 << "." << i % 200
          << R"( replied.","language":"en","category":"ip"})" << "\n";
    }
}

}  // namespace

TEST_CASE("pipeline: build-corpus, batch, score, analyze, report") {
    TempDir dir;
    write_candidates_file(dir.file("cands.jsonl"), 200);

    // build-corpus
    REQUIRE(run_cli("build-corpus --candidates " + dir.file("cands.jsonl") + " --out " +
                    dir.file("corpus.jsonl") + " --rejects " + dir.file("rej.jsonl") +
                    " --buckets 5 --per-bucket 4 --seed 7") == 0);
    const auto corpus = records::read_corpus(dir.file("corpus.jsonl"));
    REQUIRE(corpus.size() == 20);

    // determinism: same seed, byte-identical output
    REQUIRE(run_cli("build-corpus --candidates " + dir.file("cands.jsonl") + " --out " +
                    dir.file("corpus2.jsonl") + " --buckets 5 --per-bucket 4 --seed 7") == 0);
    CHECK(records::read_file(dir.file("corpus.jsonl")) ==
          records::read_file(dir.file("corpus2.jsonl")));

    // stats renders a table
    REQUIRE(run_cli("stats --corpus " + dir.file("corpus.jsonl") + " --format markdown --out " +
                    dir.file("stats.md")) == 0);
    CHECK(records::read_file(dir.file("stats.md")).find("| Group |") == 0);

    // batch export + import from "translated" documents (copy = echo system)
    REQUIRE(run_cli("batch export --corpus " + dir.file("corpus.jsonl") + " --out " +
                    dir.file("docs")) == 0);
    REQUIRE(fs::exists(dir.file("docs/en-ip.txt")));
    REQUIRE(fs::exists(dir.file("docs/manifest.jsonl")));
    for (const auto target : {"de", "pl"}) {
        fs::copy_file(dir.file("docs/en-ip.txt"),
                      dir.file(std::string("docs/en-ip.") + target + ".txt"));
    }
    REQUIRE(run_cli("batch import --docs " + dir.file("docs") + " --system echo --out " +
                    dir.file("translations.jsonl")) == 0);
    const auto translations = records::read_translations(dir.file("translations.jsonl"));
    CHECK(translations.size() == 40);  // 20 samples x 2 target documents

    // batch translate through an external command backend
    REQUIRE(run_cli("batch translate --corpus " + dir.file("corpus.jsonl") +
                    " --backend-cmd \"sh -c 'sed s/Box/Kiste/' backend\" --system sed-de "
                    "--directions en-de --out " +
                    dir.file("translations_sed.jsonl")) == 0);
    CHECK(records::read_translations(dir.file("translations_sed.jsonl")).size() == 20);

    // score both translation files
    REQUIRE(run_cli("score --corpus " + dir.file("corpus.jsonl") + " --translations " +
                    dir.file("translations.jsonl") + " --out " + dir.file("scores.jsonl")) == 0);
    auto scores = records::read_scores(dir.file("scores.jsonl"));
    REQUIRE(scores.size() == 40);
    for (const auto& s : scores) CHECK(s.outcome.is_exact());  // echo keeps every entity

    // analyze bundle
    REQUIRE(run_cli("analyze --scores " + dir.file("scores.jsonl") + " --corpus " +
                    dir.file("corpus.jsonl") + " --out " + dir.file("analysis.json")) == 0);
    const auto bundle = records::read_file(dir.file("analysis.json"));
    CHECK(bundle.find("accuracy_by_category") != std::string::npos);
    CHECK(bundle.find("error_histogram_no_emoji") != std::string::npos);
    CHECK(bundle.find("length_bins") != std::string::npos);

    // report renders tables in two formats plus charts
    REQUIRE(run_cli("report --scores " + dir.file("scores.jsonl") + " --corpus " +
                    dir.file("corpus.jsonl") + " --out " + dir.file("reports") +
                    " --format markdown,csv --emit-charts") == 0);
    CHECK(fs::exists(dir.file("reports/accuracy_by_category.md")));
    CHECK(fs::exists(dir.file("reports/accuracy_by_direction.csv")));
    CHECK(fs::exists(dir.file("reports/error_histogram.md")));
    CHECK(fs::exists(dir.file("reports/length_bins.csv")));
    CHECK(fs::exists(dir.file("reports/error_histogram.svg")));

    // rendering is deterministic across runs
    REQUIRE(run_cli("report --scores " + dir.file("scores.jsonl") + " --out " +
                    dir.file("reports2") + " --format csv") == 0);
    REQUIRE(run_cli("report --scores " + dir.file("scores.jsonl") + " --out " +
                    dir.file("reports3") + " --format csv") == 0);
    CHECK(records::read_file(dir.file("reports2/accuracy_by_category.csv")) ==
          records::read_file(dir.file("reports3/accuracy_by_category.csv")));
}

TEST_CASE("cli exit codes: usage errors are 2, data errors are 1") {
    TempDir dir;
    CHECK(run_cli("score --corpus missing.jsonl") == 2);  // missing required flags
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    CHECK(run_cli("") == 2);  // a subcommand is required

    // unknown sample ids in translations: exit 1 with diagnostics
    write_candidates_file(dir.file("cands.jsonl"), 60);
    REQUIRE(run_cli("build-corpus --candidates " + dir.file("cands.jsonl") + " --out " +
                    dir.file("corpus.jsonl") + " --buckets 2 --per-bucket 2 --seed 1") == 0);
    std::ofstream f(dir.file("bad.jsonl"));
    f << R"({"sample_id":"ghost","source_lang":"en","target_lang":"de","system_id":"s","target_text":"x"})"
      << "\n";
    f.close();
    CHECK(run_cli("score --corpus " + dir.file("corpus.jsonl") + " --translations " +
                  dir.file("bad.jsonl") + " --out " + dir.file("scores.jsonl")) == 1);

    // unsupported report format: usage error
    CHECK(run_cli("stats --corpus " + dir.file("corpus.jsonl") + " --format yaml") == 2);
}

TEST_CASE("config file seeds defaults and the command line wins") {
    TempDir dir;
    write_candidates_file(dir.file("cands.jsonl"), 120);
    std::ofstream cfg(dir.file("cfg.json"));
    cfg << R"({"corpus": {"bucket_count": 3, "per_bucket": 2, "seed": 5}})";
    cfg.close();
    REQUIRE(run_cli("--config " + dir.file("cfg.json") + " build-corpus --candidates " +
                    dir.file("cands.jsonl") + " --out " + dir.file("c1.jsonl")) == 0);
    CHECK(records::read_corpus(dir.file("c1.jsonl")).size() == 6);
    // command line overrides the configured bucket count
    REQUIRE(run_cli("--config " + dir.file("cfg.json") + " build-corpus --candidates " +
                    dir.file("cands.jsonl") + " --out " + dir.file("c2.jsonl") +
                    " --buckets 2") == 0);
    CHECK(records::read_corpus(dir.file("c2.jsonl")).size() == 4);

    // a config typo is a usage error
    std::ofstream bad(dir.file("bad.json"));
    bad << R"({"corpsu": {}})";
    bad.close();
    CHECK(run_cli("--config " + dir.file("bad.json") + " build-corpus --candidates " +
                  dir.file("cands.jsonl") + " --out " + dir.file("c3.jsonl")) == 2);
}
