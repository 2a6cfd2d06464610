#include "entity_guard/gateway.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "entity_guard/errors.hpp"
#include "entity_guard/records.hpp"

namespace entity_guard {

Direction direction_from_string(std::string_view text) {
    const auto sep = text.find('-');
    if (sep == std::string_view::npos) {
        throw SchemaError("bad direction '" + std::string(text) + "', expected e.g. en-de");
    }
    std::string_view src = text.substr(0, sep);
    std::string_view tgt = text.substr(sep + 1);
    if (tgt.starts_with('>')) tgt.remove_prefix(1);
    const auto s = language_from_string(src);
    const auto t = language_from_string(tgt);
    if (!s || !t) throw SchemaError("unknown language in direction '" + std::string(text) + "'");
    if (*s == *t) throw SchemaError("direction source equals target: " + std::string(text));
    return Direction{*s, *t};
}

std::string to_string(Direction direction) {
    std::string out(to_string(direction.source));
    out += '-';
    out += to_string(direction.target);
    return out;
}

std::vector<Direction> all_directions() {
    std::vector<Direction> out;
    for (auto s : kAllLanguages) {
        for (auto t : kAllLanguages) {
            if (s != t) out.push_back({s, t});
        }
    }
    return out;
}

// ---- batch document protocol ---------------------------------------------

std::string batch_documents(const std::vector<std::string>& texts, std::string_view separator) {
    std::string out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].find(separator) != std::string::npos) {
            throw SeparatorCollision("text " + std::to_string(i) +
                                     " contains the batch separator");
        }
        if (i > 0) out += separator;
        out += texts[i];
    }
    // Text edges can fuse with the separator (a trailing '\n' against
    // "\n\n") and silently shift the split points, so verify the joined
    // document splits back into the inputs.
    if (!texts.empty()) {
        bool splits_back = false;
        try {
            splits_back = unbatch_document(out, texts.size(), separator) == texts;
        } catch (const CountMismatch&) {
        }
        if (!splits_back) {
            throw SeparatorCollision("text edges fuse with the batch separator");
        }
    }
    return out;
}

std::string batch_documents(const std::vector<Sample>& samples, std::string_view separator) {
    std::vector<std::string> texts;
    texts.reserve(samples.size());
    for (const auto& s : samples) texts.push_back(s.text);
    return batch_documents(texts, separator);
}

std::vector<std::string> unbatch_document(std::string_view document, std::size_t expected_count,
                                          std::string_view separator) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = document.find(separator, pos);
        if (next == std::string_view::npos) {
            out.emplace_back(document.substr(pos));
            break;
        }
        out.emplace_back(document.substr(pos, next - pos));
        pos = next + separator.size();
    }
    if (out.size() != expected_count) {
        throw CountMismatch(expected_count, out.size(),
                            "document splits into " + std::to_string(out.size()) +
                                " segments, expected " + std::to_string(expected_count));
    }
    return out;
}

// ---- command backend --------------------------------------------------------

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out.push_back(c);
    }
    out += "'";
    return out;
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* tag) {
        namespace fs = std::filesystem;
        static std::atomic<unsigned> counter{0};
        path = (fs::temp_directory_path() /
                ("entity_guard_" + std::string(tag) + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++)))
                   .string();
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
};

}  // namespace

std::vector<std::string> run_command_lines(const std::string& command,
                                           const std::vector<std::string>& input_lines) {
    for (const auto& t : input_lines) {
        if (t.find('\n') != std::string::npos) {
            throw BackendError("input text contains a newline; the line protocol forbids it");
        }
    }
    TempFile in("in"), out("out");
    {
        std::ofstream f(in.path, std::ios::binary);
        for (const auto& t : input_lines) {
            f << t << '\n';
        }
        if (!f) throw BackendError("cannot stage command input");
    }
    const std::string cmd =
        command + " < " + shell_quote(in.path) + " > " + shell_quote(out.path);
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        throw BackendError("command failed: " + command);
    }
    return records::read_lines(out.path);
}

CommandBackend::CommandBackend(std::string command) : command_(std::move(command)) {}

std::vector<std::string> CommandBackend::translate(const std::vector<std::string>& texts,
                                                   Direction direction) {
    const std::string cmd = command_ + " --source-lang " +
                            std::string(to_string(direction.source)) + " --target-lang " +
                            std::string(to_string(direction.target));
    return run_command_lines(cmd, texts);
}

// ---- replay backend -----------------------------------------------------------

ReplayBackend::ReplayBackend(const std::vector<Sample>& corpus,
                             const std::vector<TranslationRecord>& translations) {
    std::map<std::string_view, const Sample*> by_id;
    for (const auto& s : corpus) by_id.emplace(s.id, &s);
    for (const auto& t : translations) {
        auto it = by_id.find(t.sample_id);
        if (it == by_id.end()) continue;
        by_text_[{it->second->text, to_string(t.direction)}] = t.target_text;
    }
}

std::vector<std::string> ReplayBackend::translate(const std::vector<std::string>& texts,
                                                  Direction direction) {
    std::vector<std::string> out;
    out.reserve(texts.size());
    const std::string dir = to_string(direction);
    for (const auto& t : texts) {
        auto it = by_text_.find({t, dir});
        if (it == by_text_.end()) {
            throw BackendError("replay backend has no translation for direction " + dir +
                               " of: " + t.substr(0, 60));
        }
        out.push_back(it->second);
    }
    return out;
}

// ---- batch driving ---------------------------------------------------------------

std::vector<std::string> translate_batch(TranslatorBackend& backend,
                                         const std::vector<std::string>& texts,
                                         Direction direction) {
    auto result = backend.translate(texts, direction);
    if (result.size() == texts.size()) return result;

    // Misaligned batch: retry one sentence at a time to preserve alignment.
    std::vector<std::string> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        auto single = backend.translate({t}, direction);
        if (single.size() != 1) {
            throw CountMismatch(1, single.size(),
                                "backend returned " + std::to_string(single.size()) +
                                    " translations for a single sentence");
        }
        out.push_back(std::move(single.front()));
    }
    return out;
}

std::vector<TranslationRecord> translate_corpus(TranslatorBackend& backend,
                                                const std::vector<Sample>& corpus,
                                                const std::vector<Direction>& directions,
                                                std::string_view system_id) {
    std::vector<Direction> dirs = directions;
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    std::vector<TranslationRecord> out;
    for (const auto dir : dirs) {
        std::vector<const Sample*> batch;
        for (const auto& s : corpus) {
            if (s.language == dir.source) batch.push_back(&s);
        }
        std::sort(batch.begin(), batch.end(),
                  [](const Sample* a, const Sample* b) { return a->id < b->id; });
        if (batch.empty()) continue;
        std::vector<std::string> texts;
        texts.reserve(batch.size());
        for (const auto* s : batch) texts.push_back(s->text);
        auto targets = translate_batch(backend, texts, dir);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            out.push_back({batch[i]->id, dir, std::string(system_id), std::move(targets[i])});
        }
    }
    return out;
}

// ---- import ------------------------------------------------------------------------

ImportResult import_translations(const std::string& path, const std::vector<Sample>& corpus) {
    std::map<std::string_view, const Sample*> by_id;
    for (const auto& s : corpus) by_id.emplace(s.id, &s);

    ImportResult result;
    std::size_t line_no = 0;
    for (const auto& line : records::read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        TranslationRecord rec;
        try {
            rec = records::translation_from_line(line);
        } catch (const SchemaError& e) {
            result.issues.push_back({ImportIssue::Kind::schema_error, line_no, e.what()});
            continue;
        }
        if (!by_id.contains(rec.sample_id)) {
            result.issues.push_back(
                {ImportIssue::Kind::unknown_sample_id, line_no, rec.sample_id});
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

}  // namespace entity_guard
