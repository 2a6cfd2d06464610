#include "entity_guard/records.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entity_guard/errors.hpp"
#include "entity_guard/unicode.hpp"

namespace entity_guard::records {

namespace {

using Json = nlohmann::ordered_json;

Json parse_line(std::string_view line) {
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw SchemaError("line is not a JSON object: " + std::string(line.substr(0, 80)));
    }
    return j;
}

std::string get_string(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
        throw SchemaError(std::string("missing or non-string field '") + key + "'");
    }
    return it->get<std::string>();
}

std::size_t get_size(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_unsigned()) {
        throw SchemaError(std::string("missing or non-integer field '") + key + "'");
    }
    return it->get<std::size_t>();
}

LanguageCode get_language(const Json& j, const char* key) {
    auto lang = language_from_string(get_string(j, key));
    if (!lang) throw SchemaError(std::string("unknown language in field '") + key + "'");
    return *lang;
}

EntityCategory get_category(const Json& j, const char* key) {
    auto cat = category_from_string(get_string(j, key));
    if (!cat) throw SchemaError(std::string("unknown category in field '") + key + "'");
    return *cat;
}

template <typename T, typename FromLine>
std::vector<T> read_record_file(const std::string& path, FromLine from_line) {
    std::vector<T> out;
    std::size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(from_line(line));
        } catch (const SchemaError& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

template <typename T, typename ToLine>
void write_record_file(const std::string& path, const std::vector<T>& records, ToLine to) {
    std::string content;
    for (const auto& r : records) {
        content += to(r);
        content += '\n';
    }
    atomic_write_file(path, content);
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void atomic_write_file(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

// ---- corpus -----------------------------------------------------------------

std::string to_line(const Sample& sample) {
    Json j;
    j["id"] = sample.id;
    j["language"] = to_string(sample.language);
    j["category"] = to_string(sample.category);
    j["text"] = sample.text;
    j["entity_text"] = sample.entity.surface;
    j["entity_start"] = sample.entity.begin;
    j["entity_end"] = sample.entity.end;
    return j.dump();
}

Sample sample_from_line(std::string_view line) {
    const Json j = parse_line(line);
    Sample s;
    s.id = get_string(j, "id");
    s.language = get_language(j, "language");
    s.category = get_category(j, "category");
    s.text = get_string(j, "text");
    s.entity.category = s.category;
    s.entity.surface = get_string(j, "entity_text");
    s.entity.begin = get_size(j, "entity_start");
    s.entity.end = get_size(j, "entity_end");
    const auto cps = uni::decode_utf8(s.text);
    if (s.entity.end > cps.size() || s.entity.begin >= s.entity.end ||
        uni::encode_utf8(std::u32string_view(cps).substr(
            s.entity.begin, s.entity.end - s.entity.begin)) != s.entity.surface) {
        throw SchemaError("entity span does not cover entity_text for sample " + s.id);
    }
    return s;
}

void write_corpus(const std::string& path, const std::vector<Sample>& corpus) {
    write_record_file(path, corpus, [](const Sample& s) { return to_line(s); });
}

std::vector<Sample> read_corpus(const std::string& path) {
    return read_record_file<Sample>(path, [](std::string_view l) { return sample_from_line(l); });
}

// ---- candidates -------------------------------------------------------------

std::string to_line(const CandidateSentence& candidate) {
    Json j;
    j["text"] = candidate.text;
    j["language"] = to_string(candidate.language);
    j["category"] = to_string(candidate.category);
    return j.dump();
}

CandidateSentence candidate_from_line(std::string_view line) {
    const Json j = parse_line(line);
    CandidateSentence c;
    c.text = get_string(j, "text");
    c.language = get_language(j, "language");
    c.category = get_category(j, "category");
    return c;
}

void write_candidates(const std::string& path, const std::vector<CandidateSentence>& candidates) {
    write_record_file(path, candidates,
                      [](const CandidateSentence& c) { return to_line(c); });
}

std::vector<CandidateSentence> read_candidates(const std::string& path) {
    return read_record_file<CandidateSentence>(
        path, [](std::string_view l) { return candidate_from_line(l); });
}

// ---- translations -----------------------------------------------------------

std::string to_line(const TranslationRecord& record) {
    Json j;
    j["sample_id"] = record.sample_id;
    j["source_lang"] = to_string(record.direction.source);
    j["target_lang"] = to_string(record.direction.target);
    j["system_id"] = record.system_id;
    j["target_text"] = record.target_text;
    return j.dump();
}

TranslationRecord translation_from_line(std::string_view line) {
    const Json j = parse_line(line);
    TranslationRecord r;
    r.sample_id = get_string(j, "sample_id");
    r.direction.source = get_language(j, "source_lang");
    r.direction.target = get_language(j, "target_lang");
    if (r.direction.source == r.direction.target) {
        throw SchemaError("source_lang equals target_lang for sample " + r.sample_id);
    }
    r.system_id = get_string(j, "system_id");
    r.target_text = get_string(j, "target_text");
    return r;
}

void write_translations(const std::string& path, const std::vector<TranslationRecord>& records) {
    write_record_file(path, records, [](const TranslationRecord& r) { return to_line(r); });
}

std::vector<TranslationRecord> read_translations(const std::string& path) {
    return read_record_file<TranslationRecord>(
        path, [](std::string_view l) { return translation_from_line(l); });
}

// ---- scores -------------------------------------------------------------------

std::string to_line(const ScoreRecord& record) {
    Json j;
    j["sample_id"] = record.sample_id;
    j["system_id"] = record.system_id;
    j["source_lang"] = to_string(record.direction.source);
    j["target_lang"] = to_string(record.direction.target);
    j["category"] = to_string(record.category);
    j["outcome"] = to_string(record.outcome.kind);
    if (record.outcome.is_modified()) j["distance"] = record.outcome.distance;
    if (record.matched_target_entity) j["target_entity"] = *record.matched_target_entity;
    return j.dump();
}

ScoreRecord score_from_line(std::string_view line) {
    const Json j = parse_line(line);
    ScoreRecord r;
    r.sample_id = get_string(j, "sample_id");
    r.system_id = get_string(j, "system_id");
    r.direction.source = get_language(j, "source_lang");
    r.direction.target = get_language(j, "target_lang");
    r.category = get_category(j, "category");
    const auto kind = outcome_kind_from_string(get_string(j, "outcome"));
    if (!kind) throw SchemaError("unknown outcome for sample " + r.sample_id);
    switch (*kind) {
        case TransferOutcome::Kind::exact:
            r.outcome = TransferOutcome::exact();
            break;
        case TransferOutcome::Kind::modified: {
            const auto d = get_size(j, "distance");
            if (d == 0) throw SchemaError("modified outcome with distance 0");
            r.outcome = TransferOutcome::modified(static_cast<std::uint32_t>(d));
            break;
        }
        case TransferOutcome::Kind::no_match:
            r.outcome = TransferOutcome::no_match();
            break;
    }
    if (auto it = j.find("target_entity"); it != j.end() && it->is_string()) {
        r.matched_target_entity = it->get<std::string>();
    }
    if (auto it = j.find("source_entity"); it != j.end() && it->is_string()) {
        r.source_entity = it->get<std::string>();
    }
    return r;
}

void write_scores(const std::string& path, const std::vector<ScoreRecord>& scores) {
    write_record_file(path, scores, [](const ScoreRecord& r) { return to_line(r); });
}

std::vector<ScoreRecord> read_scores(const std::string& path) {
    return read_record_file<ScoreRecord>(path,
                                         [](std::string_view l) { return score_from_line(l); });
}

// ---- rejects ------------------------------------------------------------------

void write_rejects(const std::string& path, const std::vector<RejectedCandidate>& rejects) {
    write_record_file(path, rejects, [](const RejectedCandidate& r) {
        Json j;
        j["text"] = r.text;
        j["reason"] = to_string(r.reason);
        return j.dump();
    });
}

// ---- token sidecar ---------------------------------------------------------------

void write_token_counts(const std::string& path,
                        const std::map<std::string, std::size_t>& counts) {
    std::string content;
    for (const auto& [id, count] : counts) {
        Json j;
        j["sample_id"] = id;
        j["token_count"] = count;
        content += j.dump();
        content += '\n';
    }
    atomic_write_file(path, content);
}

std::map<std::string, std::size_t> read_token_counts(const std::string& path) {
    std::map<std::string, std::size_t> out;
    std::size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const Json j = parse_line(line);
            out[get_string(j, "sample_id")] = get_size(j, "token_count");
        } catch (const SchemaError& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace entity_guard::records
