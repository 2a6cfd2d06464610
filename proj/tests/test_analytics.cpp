#include <doctest.h>

#include <random>

#include "entity_guard/analytics.hpp"
#include "entity_guard/errors.hpp"
#include "entity_guard/stats_math.hpp"
#include "test_util.hpp"

using namespace entity_guard;

namespace {

ScoreRecord make_score(std::string system, EntityCategory category, Direction direction,
                       TransferOutcome outcome, std::string sample_id = "s") {
    ScoreRecord r;
    r.sample_id = std::move(sample_id);
    r.system_id = std::move(system);
    r.direction = direction;
    r.category = category;
    r.source_entity = "e";
    r.outcome = outcome;
    if (!outcome.is_no_match()) r.matched_target_entity = "e";
    return r;
}

const Direction kEnDe{LanguageCode::en, LanguageCode::de};
const Direction kEnPl{LanguageCode::en, LanguageCode::pl};

}  // namespace

TEST_CASE("accuracy_table on a trivial all-exact set") {
    std::vector<ScoreRecord> scores;
    for (auto category : {EntityCategory::ip, EntityCategory::url}) {
        for (auto direction : {kEnDe, kEnPl}) {
            scores.push_back(make_score("sys", category, direction, TransferOutcome::exact()));
        }
    }
    const auto table = accuracy_table(scores, TableAxis::by_category);
    CHECK(table.cell("sys", "ip") == doctest::Approx(100.0));
    CHECK(table.cell("sys", "url") == doctest::Approx(100.0));
    CHECK(table.macro_row.at("sys") == doctest::Approx(100.0));
}

TEST_CASE("accuracy_table averages directions first for category cells") {
    std::vector<ScoreRecord> scores;
    // en-de: 1 of 2 exact (50%); en-pl: 1 of 1 exact (100%) -> cell 75, not 66.7
    scores.push_back(make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::exact()));
    scores.push_back(make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::no_match()));
    scores.push_back(make_score("sys", EntityCategory::ip, kEnPl, TransferOutcome::exact()));
    const auto table = accuracy_table(scores, TableAxis::by_category);
    CHECK(table.cell("sys", "ip") == doctest::Approx(75.0));
}

TEST_CASE("accuracy_table reports empty groups") {
    std::vector<ScoreRecord> scores;
    scores.push_back(make_score("a", EntityCategory::ip, kEnDe, TransferOutcome::exact()));
    scores.push_back(make_score("b", EntityCategory::url, kEnDe, TransferOutcome::exact()));
    const auto table = accuracy_table(scores, TableAxis::by_category);
    REQUIRE(table.missing.size() == 2);  // a lacks url, b lacks ip
    CHECK(table.missing[0].system_id == "a");
    CHECK(table.missing[0].key == "url");
    CHECK(table.missing[1].system_id == "b");
    CHECK(table.missing[1].key == "ip");
    CHECK_THROWS_AS(accuracy_table({}, TableAxis::by_category), EmptyCorpus);
}

TEST_CASE("dual-macro consistency on balanced random score sets") {
    std::mt19937_64 rng(31);
    const auto dirs = all_directions();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ScoreRecord> scores;
        const int per_cell = 3;
        for (int sys = 0; sys < 3; ++sys) {
            for (auto category : kAllCategories) {
                for (const auto& dir : dirs) {
                    for (int i = 0; i < per_cell; ++i) {
                        const auto outcome = rng() % 2 == 0
                                                 ? TransferOutcome::exact()
                                                 : TransferOutcome::modified(1 + rng() % 7);
                        scores.push_back(make_score("sys" + std::to_string(sys), category, dir,
                                                    outcome));
                    }
                }
            }
        }
        const auto by_cat = accuracy_table(scores, TableAxis::by_category);
        const auto by_dir = accuracy_table(scores, TableAxis::by_direction);
        for (const auto& [system, macro] : by_cat.macro_row) {
            CHECK(macro == doctest::Approx(by_dir.macro_row.at(system)).epsilon(1e-12));
        }
    }
}

TEST_CASE("error_histogram buckets distances and conserves counts") {
    std::vector<ScoreRecord> scores = {
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::modified(1)),
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::modified(2)),
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::modified(7)),
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::no_match()),
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::exact()),
    };
    const auto hist = error_histogram(scores);
    const auto& bands = hist.by_system.at("sys");
    CHECK(bands[0] == 1);  // no_match
    CHECK(bands[1] == 1);  // d=1
    CHECK(bands[2] == 1);  // d=2
    CHECK(bands[3] == 0);
    CHECK(bands[6] == 1);  // d>5
    CHECK(hist.total_errors("sys") == 4);
}

TEST_CASE("all-exact scores give an all-zero histogram") {
    std::vector<ScoreRecord> scores = {
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::exact()),
    };
    const auto hist = error_histogram(scores);
    for (auto count : hist.by_system.at("sys")) CHECK(count == 0);
}

TEST_CASE("histogram conservation on random score sets") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ScoreRecord> scores;
        const std::size_t n = 1 + rng() % 200;
        std::uint64_t exact = 0;
        for (std::size_t i = 0; i < n; ++i) {
            TransferOutcome outcome;
            switch (rng() % 3) {
                case 0:
                    outcome = TransferOutcome::exact();
                    ++exact;
                    break;
                case 1:
                    outcome = TransferOutcome::modified(1 + rng() % 12);
                    break;
                default:
                    outcome = TransferOutcome::no_match();
            }
            scores.push_back(make_score("sys", EntityCategory::url, kEnDe, outcome));
        }
        const auto hist = error_histogram(scores);
        CHECK(exact + hist.total_errors("sys") == n);
    }
}

TEST_CASE("top_error_category per band with deterministic ties") {
    std::vector<ScoreRecord> scores;
    for (int i = 0; i < 3; ++i) {
        scores.push_back(make_score("sys", EntityCategory::iban, kEnDe,
                                    TransferOutcome::modified(1)));
    }
    scores.push_back(make_score("sys", EntityCategory::url, kEnDe, TransferOutcome::modified(1)));
    const auto top = top_error_category(scores, ErrorBand::d1);
    REQUIRE(top.contains("sys"));
    CHECK(top.at("sys").category == EntityCategory::iban);
    CHECK(top.at("sys").count == 3);

    // empty band: no entry for the system
    CHECK(top_error_category(scores, ErrorBand::gt5).empty());

    // tie: equal counts resolve to the first category name
    std::vector<ScoreRecord> tied = {
        make_score("sys", EntityCategory::url, kEnDe, TransferOutcome::modified(2)),
        make_score("sys", EntityCategory::email, kEnDe, TransferOutcome::modified(2)),
    };
    CHECK(top_error_category(tied, ErrorBand::d2).at("sys").category == EntityCategory::email);
}

TEST_CASE("correlate reproduces the published coefficients") {
    const auto fixture = test_util::read_fixture_csv(
        test_util::asset_path("fixtures/model_entity_stats.csv"));
    REQUIRE(fixture.labels.size() == 7);
    std::vector<double> lengths, accuracies;
    for (const auto& row : fixture.rows) {
        lengths.push_back(row[0]);
        accuracies.push_back(row[1]);
    }
    const auto r = correlate(accuracies, lengths, CorrelationMethod::pearson);
    CHECK(r.coefficient == doctest::Approx(0.4317).epsilon(0.005));
    CHECK(r.p_value == doctest::Approx(0.334).epsilon(0.01));
    const auto rs = correlate(accuracies, lengths, CorrelationMethod::spearman);
    CHECK(rs.coefficient == doctest::Approx(0.3929).epsilon(0.005));
    CHECK(rs.n == 7);
}

TEST_CASE("correlate basics and degenerate inputs") {
    std::vector<double> xs = {1, 2, 3, 4, 5};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2 * x + 1);
    CHECK(correlate(xs, xs, CorrelationMethod::pearson).coefficient == doctest::Approx(1.0));
    CHECK(correlate(xs, ys, CorrelationMethod::pearson).coefficient == doctest::Approx(1.0));
    CHECK(correlate(xs, ys, CorrelationMethod::spearman).coefficient == doctest::Approx(1.0));

    std::vector<double> constant = {2, 2, 2, 2, 2};
    CHECK_THROWS_AS(correlate(xs, constant, CorrelationMethod::pearson), DegenerateInput);
    std::vector<double> two_a = {1, 2}, two_b = {2, 1};
    CHECK_THROWS_AS(correlate(two_a, two_b, CorrelationMethod::pearson), DegenerateInput);
    std::vector<double> shorter = {1, 2, 3};
    CHECK_THROWS_AS(correlate(xs, shorter, CorrelationMethod::pearson), DegenerateInput);
}

TEST_CASE("correlate is invariant under positive affine transforms") {
    std::mt19937_64 rng(41);
    std::vector<double> xs, ys;
    for (int i = 0; i < 20; ++i) {
        xs.push_back(static_cast<double>(rng() % 1000));
        ys.push_back(static_cast<double>(rng() % 1000));
    }
    const auto base = correlate(xs, ys, CorrelationMethod::pearson);
    std::vector<double> scaled;
    for (double x : xs) scaled.push_back(3.5 * x + 11.0);
    const auto moved = correlate(scaled, ys, CorrelationMethod::pearson);
    CHECK(base.coefficient == doctest::Approx(moved.coefficient).epsilon(1e-12));
}

TEST_CASE("length_bin_analysis splits into contiguous near-equal bins") {
    std::vector<Sample> corpus;
    std::vector<ScoreRecord> scores;
    for (int i = 0; i < 10; ++i) {
        Sample s;
        s.id = "en-ip-00-00" + std::to_string(i);
        s.language = LanguageCode::en;
        s.category = EntityCategory::ip;
        s.text = "w 1.2.3.4";
        for (int w = 0; w < i; ++w) s.text += " pad";
        s.entity = {EntityCategory::ip, "1.2.3.4", 2, 9};
        scores.push_back(make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::exact(),
                                    s.id));
        corpus.push_back(std::move(s));
    }
    const auto report = length_bin_analysis(scores, corpus, {}, 5);
    REQUIRE(report.bins.size() == 5);
    for (const auto& bin : report.bins) {
        CHECK(bin.sample_count == 2);
        CHECK(bin.accuracy_pct == doctest::Approx(100.0));
        CHECK(bin.modified_pct == doctest::Approx(0.0));
        CHECK(bin.no_match_pct == doctest::Approx(0.0));
    }
    for (std::size_t b = 1; b < report.bins.size(); ++b) {
        CHECK(report.bins[b - 1].max_tokens <= report.bins[b].min_tokens);
    }
}

TEST_CASE("length_bin percentages sum to 100 per populated bin") {
    std::mt19937_64 rng(43);
    std::vector<Sample> corpus;
    std::vector<ScoreRecord> scores;
    for (int i = 0; i < 37; ++i) {
        Sample s;
        s.id = "en-ip-01-" + std::to_string(100 + i);
        s.language = LanguageCode::en;
        s.category = EntityCategory::ip;
        s.text = "x 9.8.7.6";
        for (std::uint64_t w = rng() % 30; w > 0; --w) s.text += " y";
        s.entity = {EntityCategory::ip, "9.8.7.6", 2, 9};
        for (int rec = 0; rec < 3; ++rec) {
            TransferOutcome outcome =
                rng() % 3 == 0
                    ? TransferOutcome::exact()
                    : (rng() % 2 == 0 ? TransferOutcome::modified(1 + rng() % 4)
                                      : TransferOutcome::no_match());
            scores.push_back(make_score("sys", EntityCategory::ip, kEnDe, outcome, s.id));
        }
        corpus.push_back(std::move(s));
    }
    const auto report = length_bin_analysis(scores, corpus, {}, 5);
    for (const auto& bin : report.bins) {
        if (bin.record_count == 0) continue;
        CHECK(bin.accuracy_pct + bin.modified_pct + bin.no_match_pct ==
              doctest::Approx(100.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(length_bin_analysis(scores, corpus, {}, 100), InsufficientData);
}

TEST_CASE("length_bin_analysis requires full corpus coverage") {
    std::vector<Sample> corpus;
    for (int i = 0; i < 5; ++i) {
        Sample s;
        s.id = "en-ip-02-00" + std::to_string(i);
        s.language = LanguageCode::en;
        s.category = EntityCategory::ip;
        s.text = "q 1.1.1.1";
        s.entity = {EntityCategory::ip, "1.1.1.1", 2, 9};
        corpus.push_back(std::move(s));
    }
    std::vector<ScoreRecord> scores = {
        make_score("sys", EntityCategory::ip, kEnDe, TransferOutcome::exact(), "unknown-id")};
    CHECK_THROWS_AS(length_bin_analysis(scores, corpus, {}, 5), UnknownSampleId);
}

TEST_CASE("subtoken_error_correlation finds a perfect linear relation") {
    // error rate exactly proportional to token count
    std::vector<ScoreRecord> scores;
    std::map<std::string, std::size_t> counts;
    int next = 0;
    for (std::size_t tokens = 1; tokens <= 5; ++tokens) {
        for (int i = 0; i < 10; ++i) {
            const auto id = "en-email-00-" + std::to_string(next++);
            counts[id] = tokens;
            const bool error = i < static_cast<int>(tokens);  // rate = tokens/10
            scores.push_back(make_score("sys", EntityCategory::email, kEnDe,
                                        error ? TransferOutcome::no_match()
                                              : TransferOutcome::exact(),
                                        id));
        }
    }
    const auto result = subtoken_error_correlation(scores, counts, EntityCategory::email);
    CHECK(result.coefficient == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(result.n == 5);
}

TEST_CASE("subtoken_error_correlation is near zero for independent errors") {
    // Simulation oracle: errors drawn independently of the token count.
    // The coefficient is computed over per-count group rates, so the
    // number of distinct counts drives its spread; use plenty.
    std::mt19937_64 rng(47);
    std::vector<ScoreRecord> scores;
    std::map<std::string, std::size_t> counts;
    int next = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto id = "en-url-00-" + std::to_string(next++);
        counts[id] = 1 + rng() % 400;
        const bool error = rng() % 4 == 0;
        scores.push_back(make_score("sys", EntityCategory::url, kEnDe,
                                    error ? TransferOutcome::modified(1)
                                          : TransferOutcome::exact(),
                                    id));
    }
    const auto result = subtoken_error_correlation(scores, counts, EntityCategory::url);
    CHECK(result.n >= 350);
    CHECK(std::abs(result.coefficient) < 0.1);
}

TEST_CASE("subtoken_error_correlation demands coverage") {
    std::vector<ScoreRecord> scores = {
        make_score("sys", EntityCategory::email, kEnDe, TransferOutcome::exact(), "x")};
    CHECK_THROWS_AS(subtoken_error_correlation(scores, {}, EntityCategory::email),
                    UnknownSampleId);
}

TEST_CASE("stats primitives") {
    std::vector<double> xs = {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    CHECK(stats::mean(xs) == doctest::Approx(5.0));
    CHECK(stats::stddev_population(xs) == doctest::Approx(2.0));
    CHECK(stats::stddev_sample(xs) == doctest::Approx(2.13809).epsilon(1e-5));

    const auto ranks = stats::average_ranks(std::vector<double>{10.0, 20.0, 20.0, 30.0});
    CHECK(ranks == std::vector<double>{1.0, 2.5, 2.5, 4.0});

    // two-sided t tail: symmetric, increasing toward 1 at t = 0
    CHECK(stats::student_t_two_sided_p(0.0, 5.0) == doctest::Approx(1.0));
    CHECK(stats::student_t_two_sided_p(2.571, 5.0) == doctest::Approx(0.05).epsilon(0.002));
    CHECK(stats::student_t_two_sided_p(-2.571, 5.0) ==
          doctest::Approx(stats::student_t_two_sided_p(2.571, 5.0)));
}
