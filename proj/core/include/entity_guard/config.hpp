// Toolkit configuration: a single JSON file whose values seed the CLI
// defaults; every setting can be overridden on the command line, and the
// command line wins. ENTITY_GUARD_CONFIG provides the path fallback.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entity_guard/corpus.hpp"
#include "entity_guard/gateway.hpp"
#include "entity_guard/report.hpp"

namespace entity_guard {

struct PipelineConfig {
    // stage file paths
    std::string corpus_path;
    std::string translations_path;
    std::string scores_path;
    std::string reports_dir;

    CorpusBuildConfig corpus;

    std::vector<std::string> systems;     // empty = no filter
    std::vector<Direction> directions;    // empty = no filter
    std::vector<ReportFormat> formats{ReportFormat::markdown};
    bool emit_charts = false;

    // external filter hooks (see README): a command fed one sentence per
    // line answering one verdict per line, or a precomputed verdict file
    std::string language_command;
    std::string language_verdicts_path;
    std::string grammar_command;
    std::string grammar_verdicts_path;

    // registry pattern overrides by category name
    std::map<EntityCategory, std::string> pattern_overrides;
};

// Loads the JSON config; unknown keys are errors so typos surface early.
PipelineConfig load_config(const std::string& path);

// Path from ENTITY_GUARD_CONFIG, when set and non-empty.
std::optional<std::string> config_path_from_env();

// Applies pattern overrides to the global registry.
void apply_pattern_overrides(const PipelineConfig& config);

// Runs a filter command once over all texts (one per line, one verdict
// line back: 1/0, true/false, ok/fail, yes/no). Throws BackendError on
// non-zero exit or a count mismatch.
std::vector<bool> run_verdict_command(const std::string& command,
                                      const std::vector<std::string>& texts,
                                      const std::string& extra_args = {});

// Verdict file: JSONL {"text": ..., "ok": true}. Texts absent from the
// file pass the filter.
std::map<std::string, bool> load_verdict_file(const std::string& path);

}  // namespace entity_guard
