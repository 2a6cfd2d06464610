// entity-guard: builds entity-bearing evaluation corpora, moves them
// through translation backends, scores entity transfer, and renders the
// report tables. Subcommands: build-corpus, stats, batch, score, analyze,
// report. Exit codes: 0 success, 1 data errors, 2 usage errors.
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entity_guard/analytics.hpp"
#include "entity_guard/config.hpp"
#include "entity_guard/corpus.hpp"
#include "entity_guard/errors.hpp"
#include "entity_guard/gateway.hpp"
#include "entity_guard/records.hpp"
#include "entity_guard/report.hpp"
#include "entity_guard/scoring.hpp"

namespace eg = entity_guard;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> systems;
    std::vector<std::string> directions;
};

eg::PipelineConfig resolve_config(const CommonOpts& common) {
    eg::PipelineConfig cfg;
    std::string path = common.config_path;
    if (path.empty()) {
        if (auto env = eg::config_path_from_env()) path = *env;
    }
    if (!path.empty()) cfg = eg::load_config(path);
    if (!common.systems.empty()) cfg.systems = common.systems;
    if (!common.directions.empty()) {
        cfg.directions.clear();
        for (const auto& d : common.directions) {
            cfg.directions.push_back(eg::direction_from_string(d));
        }
    }
    eg::apply_pattern_overrides(cfg);
    return cfg;
}

template <typename Record>
void filter_records(std::vector<Record>& records, const eg::PipelineConfig& cfg) {
    if (!cfg.systems.empty()) {
        const std::set<std::string> keep(cfg.systems.begin(), cfg.systems.end());
        std::erase_if(records, [&](const Record& r) { return !keep.contains(r.system_id); });
    }
    if (!cfg.directions.empty()) {
        const std::set<eg::Direction> keep(cfg.directions.begin(), cfg.directions.end());
        std::erase_if(records, [&](const Record& r) { return !keep.contains(r.direction); });
    }
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        eg::records::atomic_write_file(out_path, content);
    }
}

// ---- build-corpus ------------------------------------------------------------

struct BuildOpts {
    std::string candidates_path;
    std::string out_path;
    std::string rejects_path;
    std::string plain_language;
    std::string plain_category;
    std::optional<std::uint64_t> seed;
    std::optional<int> buckets;
    std::optional<int> per_bucket;
};

int run_build(const CommonOpts& common, const BuildOpts& opts) {
    auto cfg = resolve_config(common);
    if (opts.seed) cfg.corpus.rng_seed = *opts.seed;
    if (opts.buckets) cfg.corpus.bucket_count = *opts.buckets;
    if (opts.per_bucket) cfg.corpus.per_bucket = *opts.per_bucket;

    // Candidates arrive as record lines, or as plain text with the
    // language and category given on the command line.
    std::vector<eg::CandidateSentence> candidates;
    if (!opts.plain_language.empty() || !opts.plain_category.empty()) {
        const auto lang = eg::language_from_string(opts.plain_language);
        const auto cat = eg::category_from_string(opts.plain_category);
        if (!lang || !cat) {
            std::cerr << "unknown --language or --category value\n";
            return 2;
        }
        for (auto& line : eg::records::read_lines(opts.candidates_path)) {
            if (line.empty()) continue;
            candidates.push_back({std::move(line), *lang, *cat});
        }
    } else {
        candidates = eg::records::read_candidates(opts.candidates_path);
    }

    // Group by (language, category); each group runs the pipeline with the
    // same seed, and groups are emitted in name order.
    std::map<std::pair<std::string, std::string>, std::vector<eg::CandidateSentence>> groups;
    for (auto& c : candidates) {
        groups[{std::string(eg::to_string(c.language)), std::string(eg::to_string(c.category))}]
            .push_back(std::move(c));
    }

    const std::map<std::string, bool> language_verdicts =
        cfg.language_verdicts_path.empty() ? std::map<std::string, bool>{}
                                           : eg::load_verdict_file(cfg.language_verdicts_path);
    const std::map<std::string, bool> grammar_verdicts =
        cfg.grammar_verdicts_path.empty() ? std::map<std::string, bool>{}
                                          : eg::load_verdict_file(cfg.grammar_verdicts_path);

    std::vector<eg::Sample> corpus;
    std::vector<eg::RejectedCandidate> rejects;
    for (auto& [key, group] : groups) {
        // Command hooks are invoked once per group over the stripped texts.
        std::map<std::string, bool> language_cmd_verdicts;
        std::map<std::string, bool> grammar_cmd_verdicts;
        if (cfg.corpus.language_filter_enabled && !cfg.language_command.empty()) {
            std::vector<std::string> texts;
            for (const auto& c : group) texts.push_back(eg::strip_generation_remarks(c.text));
            auto verdicts =
                eg::run_verdict_command(cfg.language_command, texts, "--language " + key.first);
            for (std::size_t i = 0; i < texts.size(); ++i) {
                language_cmd_verdicts[texts[i]] = verdicts[i];
            }
        }
        if (cfg.corpus.grammar_filter_enabled && !cfg.grammar_command.empty()) {
            std::vector<std::string> texts;
            for (const auto& c : group) texts.push_back(eg::strip_generation_remarks(c.text));
            auto verdicts = eg::run_verdict_command(cfg.grammar_command, texts);
            for (std::size_t i = 0; i < texts.size(); ++i) {
                grammar_cmd_verdicts[texts[i]] = verdicts[i];
            }
        }

        eg::LanguagePredicate language_ok;
        if (!language_cmd_verdicts.empty() || !language_verdicts.empty()) {
            language_ok = [&language_cmd_verdicts, &language_verdicts](
                              std::string_view text, eg::LanguageCode) {
                const std::string key_text(text);
                if (auto it = language_cmd_verdicts.find(key_text);
                    it != language_cmd_verdicts.end()) {
                    return it->second;
                }
                if (auto it = language_verdicts.find(key_text); it != language_verdicts.end()) {
                    return it->second;
                }
                return true;
            };
        }
        eg::GrammarPredicate grammar_ok;
        if (!grammar_cmd_verdicts.empty() || !grammar_verdicts.empty()) {
            grammar_ok = [&grammar_cmd_verdicts, &grammar_verdicts](std::string_view text) {
                const std::string key_text(text);
                if (auto it = grammar_cmd_verdicts.find(key_text);
                    it != grammar_cmd_verdicts.end()) {
                    return it->second;
                }
                if (auto it = grammar_verdicts.find(key_text); it != grammar_verdicts.end()) {
                    return it->second;
                }
                return true;
            };
        }

        auto result = eg::build_corpus(group, cfg.corpus, language_ok, grammar_ok);
        corpus.insert(corpus.end(), std::make_move_iterator(result.samples.begin()),
                      std::make_move_iterator(result.samples.end()));
        rejects.insert(rejects.end(), std::make_move_iterator(result.rejects.begin()),
                       std::make_move_iterator(result.rejects.end()));
    }

    eg::records::write_corpus(opts.out_path, corpus);
    if (!opts.rejects_path.empty()) eg::records::write_rejects(opts.rejects_path, rejects);
    std::cerr << "wrote " << corpus.size() << " samples (" << rejects.size() << " rejected)\n";
    return 0;
}

// ---- stats ----------------------------------------------------------------------

int run_stats(const CommonOpts& common, const std::string& corpus_path,
              const std::string& format_name, const std::string& out_path) {
    resolve_config(common);
    const auto corpus = eg::records::read_corpus(corpus_path);
    const auto stats = eg::corpus_stats(corpus);
    const auto rendered =
        eg::render_table(stats, eg::report_format_from_string(format_name));
    write_or_print(out_path, rendered.content);
    return 0;
}

// ---- batch ----------------------------------------------------------------------

int run_batch_export(const CommonOpts& common, const std::string& corpus_path,
                     const std::string& out_dir) {
    resolve_config(common);
    const auto corpus = eg::records::read_corpus(corpus_path);
    std::map<std::pair<std::string, std::string>, std::vector<const eg::Sample*>> groups;
    for (const auto& s : corpus) {
        groups[{std::string(eg::to_string(s.language)), std::string(eg::to_string(s.category))}]
            .push_back(&s);
    }
    fs::create_directories(out_dir);
    std::string manifest;
    for (auto& [key, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const eg::Sample* a, const eg::Sample* b) { return a->id < b->id; });
        std::vector<std::string> texts;
        Json ids = Json::array();
        for (const auto* s : group) {
            texts.push_back(s->text);
            ids.push_back(s->id);
        }
        const std::string doc_name = key.first + "-" + key.second + ".txt";
        eg::records::atomic_write_file((fs::path(out_dir) / doc_name).string(),
                                       eg::batch_documents(texts));
        Json entry;
        entry["doc"] = doc_name;
        entry["language"] = key.first;
        entry["category"] = key.second;
        entry["sample_ids"] = std::move(ids);
        manifest += entry.dump();
        manifest += '\n';
    }
    eg::records::atomic_write_file((fs::path(out_dir) / "manifest.jsonl").string(), manifest);
    std::cerr << "exported " << groups.size() << " documents to " << out_dir << "\n";
    return 0;
}

int run_batch_import(const CommonOpts& common, const std::string& docs_dir,
                     const std::string& system_id, const std::string& out_path) {
    const auto cfg = resolve_config(common);
    std::vector<eg::TranslationRecord> records;
    for (const auto& line :
         eg::records::read_lines((fs::path(docs_dir) / "manifest.jsonl").string())) {
        if (line.empty()) continue;
        const Json entry = Json::parse(line);
        const std::string doc = entry["doc"].get<std::string>();
        const auto source = eg::language_from_string(entry["language"].get<std::string>());
        if (!source) throw eg::SchemaError("manifest language unknown in " + doc);
        std::vector<std::string> ids;
        for (const auto& id : entry["sample_ids"]) ids.push_back(id.get<std::string>());

        for (const auto target : eg::kAllLanguages) {
            if (target == *source) continue;
            const eg::Direction dir{*source, target};
            if (!cfg.directions.empty() &&
                std::find(cfg.directions.begin(), cfg.directions.end(), dir) ==
                    cfg.directions.end()) {
                continue;
            }
            const auto stem = doc.substr(0, doc.size() - 4);  // drop ".txt"
            const auto translated =
                fs::path(docs_dir) / (stem + "." + std::string(eg::to_string(target)) + ".txt");
            if (!fs::exists(translated)) continue;
            const auto segments = eg::unbatch_document(
                eg::records::read_file(translated.string()), ids.size());
            for (std::size_t i = 0; i < ids.size(); ++i) {
                records.push_back({ids[i], dir, system_id, segments[i]});
            }
        }
    }
    eg::records::write_translations(out_path, records);
    std::cerr << "imported " << records.size() << " translations\n";
    return 0;
}

int run_batch_translate(const CommonOpts& common, const std::string& corpus_path,
                        const std::string& backend_cmd, const std::string& system_id,
                        const std::string& out_path) {
    const auto cfg = resolve_config(common);
    const auto corpus = eg::records::read_corpus(corpus_path);
    const auto dirs = cfg.directions.empty() ? eg::all_directions() : cfg.directions;
    eg::CommandBackend backend(backend_cmd);
    const auto records = eg::translate_corpus(backend, corpus, dirs, system_id);
    eg::records::write_translations(out_path, records);
    std::cerr << "translated " << records.size() << " sentences\n";
    return 0;
}

// ---- score ----------------------------------------------------------------------

int run_score(const CommonOpts& common, const std::string& corpus_path,
              const std::string& translations_path, const std::string& out_path) {
    const auto cfg = resolve_config(common);
    const auto corpus = eg::records::read_corpus(corpus_path);
    auto import = eg::import_translations(translations_path, corpus);
    if (!import.issues.empty()) {
        for (const auto& issue : import.issues) {
            std::cerr << translations_path << ":" << issue.line << ": "
                      << (issue.kind == eg::ImportIssue::Kind::unknown_sample_id
                              ? "unknown sample id: "
                              : "")
                      << issue.detail << "\n";
        }
        return 1;
    }
    filter_records(import.records, cfg);
    const auto scores = eg::score_corpus(corpus, import.records);
    eg::records::write_scores(out_path, scores);
    std::cerr << "scored " << scores.size() << " translations\n";
    return 0;
}

// ---- analyze ---------------------------------------------------------------------

Json table_to_json(const eg::AggregateTable& table) {
    Json j;
    j["axis"] = eg::to_string(table.axis);
    Json cells = Json::object();
    for (const auto& system : table.systems) {
        Json row = Json::object();
        for (const auto& key : table.keys) {
            if (auto cell = table.cell(system, key)) row[key] = *cell;
        }
        cells[system] = std::move(row);
    }
    j["cells"] = std::move(cells);
    Json macro = Json::object();
    for (const auto& [system, value] : table.macro_row) macro[system] = value;
    j["macro_avg"] = std::move(macro);
    if (!table.missing.empty()) {
        Json missing = Json::array();
        for (const auto& m : table.missing) {
            missing.push_back(Json{{"system", m.system_id}, {"key", m.key}});
        }
        j["empty_groups"] = std::move(missing);
    }
    return j;
}

Json histogram_to_json(const eg::ErrorHistogram& hist) {
    Json j = Json::object();
    for (const auto& [system, bands] : hist.by_system) {
        Json row = Json::object();
        for (std::size_t b = 0; b < eg::kHistogramBands; ++b) {
            row[std::string(eg::kHistogramBandNames[b])] = bands[b];
        }
        j[system] = std::move(row);
    }
    return j;
}

struct AnalyzeOpts {
    std::string scores_path;
    std::string corpus_path;
    std::string out_path;
    std::string category;
    std::string token_counts_path;
    int bins = 5;
};

int run_analyze(const CommonOpts& common, const AnalyzeOpts& opts) {
    const auto cfg = resolve_config(common);
    auto scores = eg::records::read_scores(opts.scores_path);
    filter_records(scores, cfg);

    Json out;
    out["accuracy_by_category"] = table_to_json(eg::accuracy_table(scores, eg::TableAxis::by_category));
    out["accuracy_by_direction"] =
        table_to_json(eg::accuracy_table(scores, eg::TableAxis::by_direction));
    out["error_histogram"] = histogram_to_json(eg::error_histogram(scores));

    std::vector<eg::ScoreRecord> no_emoji;
    std::copy_if(scores.begin(), scores.end(), std::back_inserter(no_emoji),
                 [](const eg::ScoreRecord& r) { return r.category != eg::EntityCategory::emoji; });
    out["error_histogram_no_emoji"] = histogram_to_json(eg::error_histogram(no_emoji));

    Json top = Json::object();
    for (auto band : eg::kTopErrorBands) {
        Json per_system = Json::object();
        for (const auto& [system, cc] : eg::top_error_category(scores, band)) {
            per_system[system] =
                Json{{"category", eg::to_string(cc.category)}, {"count", cc.count}};
        }
        top[std::string(eg::to_string(band))] = std::move(per_system);
    }
    out["top_error_categories"] = std::move(top);

    if (!opts.corpus_path.empty()) {
        const auto corpus = eg::records::read_corpus(opts.corpus_path);
        const auto bins = eg::length_bin_analysis(scores, corpus, {}, opts.bins);
        Json rows = Json::array();
        for (const auto& bin : bins.bins) {
            rows.push_back(Json{{"min_tokens", bin.min_tokens},
                                {"max_tokens", bin.max_tokens},
                                {"samples", bin.sample_count},
                                {"records", bin.record_count},
                                {"accuracy_pct", bin.accuracy_pct},
                                {"modified_pct", bin.modified_pct},
                                {"no_match_pct", bin.no_match_pct}});
        }
        out["length_bins"] = std::move(rows);
    }

    if (!opts.token_counts_path.empty()) {
        const auto category = eg::category_from_string(opts.category);
        if (!category) {
            std::cerr << "--token-counts requires --category\n";
            return 2;
        }
        const auto counts = eg::records::read_token_counts(opts.token_counts_path);
        const auto corr = eg::subtoken_error_correlation(scores, counts, *category);
        out["subtoken_error_correlation"] =
            Json{{"category", opts.category},
                 {"method", eg::to_string(corr.method)},
                 {"coefficient", corr.coefficient},
                 {"p_value", corr.p_value},
                 {"n", corr.n}};
    }

    write_or_print(opts.out_path, out.dump(2) + "\n");
    return 0;
}

// ---- report ----------------------------------------------------------------------

struct ReportOpts {
    std::string scores_path;
    std::string corpus_path;
    std::string out_dir;
    std::vector<std::string> formats;
    bool emit_charts = false;
    int bins = 5;
};

int run_report(const CommonOpts& common, const ReportOpts& opts) {
    auto cfg = resolve_config(common);
    if (!opts.formats.empty()) {
        cfg.formats.clear();
        for (const auto& f : opts.formats) cfg.formats.push_back(eg::report_format_from_string(f));
    }
    if (opts.emit_charts) cfg.emit_charts = true;

    auto scores = eg::records::read_scores(opts.scores_path);
    filter_records(scores, cfg);

    const auto by_category = eg::accuracy_table(scores, eg::TableAxis::by_category);
    const auto by_direction = eg::accuracy_table(scores, eg::TableAxis::by_direction);
    const auto histogram = eg::error_histogram(scores);
    std::array<std::map<std::string, eg::CategoryCount>, 3> top_errors;
    for (std::size_t b = 0; b < eg::kTopErrorBands.size(); ++b) {
        top_errors[b] = eg::top_error_category(scores, eg::kTopErrorBands[b]);
    }
    std::optional<eg::LengthBinReport> bins;
    if (!opts.corpus_path.empty()) {
        const auto corpus = eg::records::read_corpus(opts.corpus_path);
        bins = eg::length_bin_analysis(scores, corpus, {}, opts.bins);
    }

    fs::create_directories(opts.out_dir);
    const auto extension = [](eg::ReportFormat f) {
        switch (f) {
            case eg::ReportFormat::csv: return ".csv";
            case eg::ReportFormat::json: return ".json";
            case eg::ReportFormat::markdown: return ".md";
        }
        return "";
    };
    const auto emit = [&](const eg::RenderedReport& rendered) {
        const auto path =
            fs::path(opts.out_dir) / (rendered.table_id + extension(rendered.format));
        eg::records::atomic_write_file(path.string(), rendered.content);
    };
    for (const auto format : cfg.formats) {
        emit(eg::render_table(by_category, format));
        emit(eg::render_table(by_direction, format));
        emit(eg::render_table(histogram, format));
        emit(eg::render_top_errors(top_errors, format));
        if (bins) emit(eg::render_table(*bins, format));
    }
    if (cfg.emit_charts) {
        eg::records::atomic_write_file(
            (fs::path(opts.out_dir) / "error_histogram.svg").string(),
            eg::render_chart_svg(histogram));
        if (bins) {
            eg::records::atomic_write_file((fs::path(opts.out_dir) / "length_bins.svg").string(),
                                           eg::render_chart_svg(*bins));
        }
    }
    std::cerr << "reports written to " << opts.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"no-translate entity transfer evaluation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // --config/--systems/--directions may follow the subcommand

    CommonOpts common;
    app.add_option("--config", common.config_path,
                   "JSON config file (fallback: ENTITY_GUARD_CONFIG)");
    app.add_option("--systems", common.systems, "restrict to these system ids")->delimiter(',');
    app.add_option("--directions", common.directions, "restrict to these directions, e.g. en-de")
        ->delimiter(',');

    // build-corpus
    BuildOpts build;
    auto* cmd_build = app.add_subcommand("build-corpus", "select samples from raw candidates");
    cmd_build->add_option("--candidates", build.candidates_path, "candidate sentences file")
        ->required();
    cmd_build->add_option("--out", build.out_path, "corpus output file")->required();
    cmd_build->add_option("--rejects", build.rejects_path, "rejection log output");
    cmd_build->add_option("--language", build.plain_language,
                          "language of a plain-text candidates file");
    cmd_build->add_option("--category", build.plain_category,
                          "category of a plain-text candidates file");
    std::uint64_t seed_value = 0;
    auto* seed_opt = cmd_build->add_option("--seed", seed_value, "sampling seed");
    int buckets_value = 0;
    auto* buckets_opt = cmd_build->add_option("--buckets", buckets_value, "bucket count");
    int per_bucket_value = 0;
    auto* per_bucket_opt =
        cmd_build->add_option("--per-bucket", per_bucket_value, "samples per bucket");

    // stats
    std::string stats_corpus, stats_format = "markdown", stats_out;
    auto* cmd_stats = app.add_subcommand("stats", "corpus token and entity-length statistics");
    cmd_stats->add_option("--corpus", stats_corpus, "corpus file")->required();
    cmd_stats->add_option("--format", stats_format, "csv, json, or markdown");
    cmd_stats->add_option("--out", stats_out, "output file (default: stdout)");

    // batch
    auto* cmd_batch = app.add_subcommand("batch", "batch document protocol and backends");
    cmd_batch->require_subcommand(1);
    std::string be_corpus, be_out_dir;
    auto* cmd_export = cmd_batch->add_subcommand("export", "write batch documents per group");
    cmd_export->add_option("--corpus", be_corpus, "corpus file")->required();
    cmd_export->add_option("--out", be_out_dir, "output directory")->required();
    std::string bi_docs, bi_system, bi_out;
    auto* cmd_import =
        cmd_batch->add_subcommand("import", "read translated batch documents back");
    cmd_import->add_option("--docs", bi_docs, "directory with documents and manifest")
        ->required();
    cmd_import->add_option("--system", bi_system, "system id for the records")->required();
    cmd_import->add_option("--out", bi_out, "translations output file")->required();
    std::string bt_corpus, bt_cmd, bt_system, bt_out;
    auto* cmd_translate =
        cmd_batch->add_subcommand("translate", "drive an external command backend");
    cmd_translate->add_option("--corpus", bt_corpus, "corpus file")->required();
    cmd_translate->add_option("--backend-cmd", bt_cmd, "translator command")->required();
    cmd_translate->add_option("--system", bt_system, "system id for the records")->required();
    cmd_translate->add_option("--out", bt_out, "translations output file")->required();

    // score
    std::string sc_corpus, sc_translations, sc_out;
    auto* cmd_score = app.add_subcommand("score", "classify entity transfer per translation");
    cmd_score->add_option("--corpus", sc_corpus, "corpus file")->required();
    cmd_score->add_option("--translations", sc_translations, "translations file")->required();
    cmd_score->add_option("--out", sc_out, "scores output file")->required();

    // analyze
    AnalyzeOpts analyze;
    auto* cmd_analyze = app.add_subcommand("analyze", "aggregate statistics as a JSON bundle");
    cmd_analyze->add_option("--scores", analyze.scores_path, "scores file")->required();
    cmd_analyze->add_option("--corpus", analyze.corpus_path, "corpus file (for length bins)");
    cmd_analyze->add_option("--out", analyze.out_path, "output file (default: stdout)");
    cmd_analyze->add_option("--category", analyze.category, "category for subtoken correlation");
    cmd_analyze->add_option("--token-counts", analyze.token_counts_path,
                            "entity token-count sidecar");
    cmd_analyze->add_option("--bins", analyze.bins, "length bin count");

    // report
    ReportOpts report;
    auto* cmd_report = app.add_subcommand("report", "render tables and charts");
    cmd_report->add_option("--scores", report.scores_path, "scores file")->required();
    cmd_report->add_option("--corpus", report.corpus_path, "corpus file (for length bins)");
    cmd_report->add_option("--out", report.out_dir, "output directory")->required();
    cmd_report->add_option("--format", report.formats, "csv, json, markdown")->delimiter(',');
    cmd_report->add_flag("--emit-charts", report.emit_charts, "write SVG charts");
    cmd_report->add_option("--bins", report.bins, "length bin count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
    }

    try {
        if (*cmd_build) {
            if (*seed_opt) build.seed = seed_value;
            if (*buckets_opt) build.buckets = buckets_value;
            if (*per_bucket_opt) build.per_bucket = per_bucket_value;
            return run_build(common, build);
        }
        if (*cmd_stats) return run_stats(common, stats_corpus, stats_format, stats_out);
        if (*cmd_batch) {
            if (*cmd_export) return run_batch_export(common, be_corpus, be_out_dir);
            if (*cmd_import) return run_batch_import(common, bi_docs, bi_system, bi_out);
            if (*cmd_translate)
                return run_batch_translate(common, bt_corpus, bt_cmd, bt_system, bt_out);
        }
        if (*cmd_score) return run_score(common, sc_corpus, sc_translations, sc_out);
        if (*cmd_analyze) return run_analyze(common, analyze);
        if (*cmd_report) return run_report(common, report);
    } catch (const eg::UnsupportedFormat& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eg::UnknownSampleId& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& id : e.sample_ids) std::cerr << "  unknown sample id: " << id << "\n";
        return 1;
    } catch (const eg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
