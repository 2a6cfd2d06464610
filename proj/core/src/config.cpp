#include "entity_guard/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "entity_guard/errors.hpp"
#include "entity_guard/records.hpp"

namespace entity_guard {

namespace {

using Json = nlohmann::ordered_json;

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

std::string opt_string(const Json& j, const char* key, std::string fallback = {}) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
    return it->get<std::string>();
}

}  // namespace

PipelineConfig load_config(const std::string& path) {
    Json j = Json::parse(records::read_file(path), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("config is not a JSON object: " + path);

    PipelineConfig cfg;
    require_keys(j, {"paths", "corpus", "systems", "directions", "formats", "emit_charts",
                     "hooks", "patterns"},
                 path);

    if (auto it = j.find("paths"); it != j.end()) {
        require_keys(*it, {"corpus", "translations", "scores", "reports"}, "paths");
        cfg.corpus_path = opt_string(*it, "corpus");
        cfg.translations_path = opt_string(*it, "translations");
        cfg.scores_path = opt_string(*it, "scores");
        cfg.reports_dir = opt_string(*it, "reports");
    }

    if (auto it = j.find("corpus"); it != j.end()) {
        require_keys(*it, {"bucket_count", "per_bucket", "seed", "language_filter",
                           "grammar_filter"},
                     "corpus");
        cfg.corpus.bucket_count = it->value("bucket_count", cfg.corpus.bucket_count);
        cfg.corpus.per_bucket = it->value("per_bucket", cfg.corpus.per_bucket);
        cfg.corpus.rng_seed = it->value("seed", cfg.corpus.rng_seed);
        cfg.corpus.language_filter_enabled =
            it->value("language_filter", cfg.corpus.language_filter_enabled);
        cfg.corpus.grammar_filter_enabled =
            it->value("grammar_filter", cfg.corpus.grammar_filter_enabled);
        if (cfg.corpus.bucket_count < 1 || cfg.corpus.per_bucket < 1) {
            throw ConfigError("corpus.bucket_count and corpus.per_bucket must be positive");
        }
    }

    if (auto it = j.find("systems"); it != j.end()) {
        for (const auto& s : *it) cfg.systems.push_back(s.get<std::string>());
    }
    if (auto it = j.find("directions"); it != j.end()) {
        for (const auto& d : *it) cfg.directions.push_back(direction_from_string(d.get<std::string>()));
    }
    if (auto it = j.find("formats"); it != j.end()) {
        cfg.formats.clear();
        for (const auto& f : *it) cfg.formats.push_back(report_format_from_string(f.get<std::string>()));
        if (cfg.formats.empty()) throw ConfigError("formats must list at least one format");
    }
    cfg.emit_charts = j.value("emit_charts", false);

    if (auto it = j.find("hooks"); it != j.end()) {
        require_keys(*it, {"language_command", "language_verdicts", "grammar_command",
                           "grammar_verdicts"},
                     "hooks");
        cfg.language_command = opt_string(*it, "language_command");
        cfg.language_verdicts_path = opt_string(*it, "language_verdicts");
        cfg.grammar_command = opt_string(*it, "grammar_command");
        cfg.grammar_verdicts_path = opt_string(*it, "grammar_verdicts");
    }

    if (auto it = j.find("patterns"); it != j.end()) {
        for (const auto& [name, value] : it->items()) {
            const auto category = category_from_string(name);
            if (!category) throw ConfigError("unknown category '" + name + "' in patterns");
            cfg.pattern_overrides[*category] = value.get<std::string>();
        }
    }
    return cfg;
}

std::optional<std::string> config_path_from_env() {
    const char* env = std::getenv("ENTITY_GUARD_CONFIG");
    if (env && *env) return std::string(env);
    return std::nullopt;
}

void apply_pattern_overrides(const PipelineConfig& config) {
    for (const auto& [category, pattern] : config.pattern_overrides) {
        override_pattern(category, pattern);
    }
}

std::vector<bool> run_verdict_command(const std::string& command,
                                      const std::vector<std::string>& texts,
                                      const std::string& extra_args) {
    const std::string cmd = extra_args.empty() ? command : command + " " + extra_args;
    const auto lines = run_command_lines(cmd, texts);
    if (lines.size() != texts.size()) {
        throw BackendError("verdict command answered " + std::to_string(lines.size()) +
                           " lines for " + std::to_string(texts.size()) + " texts");
    }
    std::vector<bool> out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
        out.push_back(line == "1" || line == "true" || line == "ok" || line == "yes");
    }
    return out;
}

std::map<std::string, bool> load_verdict_file(const std::string& path) {
    std::map<std::string, bool> out;
    std::size_t line_no = 0;
    for (const auto& line : records::read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded() || !j.is_object() || !j.contains("text") || !j.contains("ok")) {
            throw SchemaError(path + ":" + std::to_string(line_no) +
                              ": expected {\"text\": ..., \"ok\": ...}");
        }
        out[j["text"].get<std::string>()] = j["ok"].get<bool>();
    }
    return out;
}

}  // namespace entity_guard
