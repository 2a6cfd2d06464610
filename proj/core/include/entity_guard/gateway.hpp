// Movement of corpora to and from translation systems: the batch document
// protocol, pluggable backends, and import of precomputed translations.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entity_guard/corpus.hpp"

namespace entity_guard {

struct Direction {
    LanguageCode source = LanguageCode::en;
    LanguageCode target = LanguageCode::de;

    bool operator==(const Direction&) const = default;
    auto operator<=>(const Direction&) const = default;
};

// "en-de" form; throws SchemaError on unknown languages or source==target.
Direction direction_from_string(std::string_view text);
std::string to_string(Direction direction);

// All 12 ordered pairs over the four languages.
std::vector<Direction> all_directions();

struct TranslationRecord {
    std::string sample_id;
    Direction direction;
    std::string system_id;
    std::string target_text;  // may be empty: scored as a no-match downstream
};

// ---- batch document protocol ---------------------------------------------

inline constexpr std::string_view kDefaultSeparator = "\n\n";

// Joins texts with the separator, input order preserved. Throws
// SeparatorCollision when any text contains the separator.
std::string batch_documents(const std::vector<std::string>& texts,
                            std::string_view separator = kDefaultSeparator);
std::string batch_documents(const std::vector<Sample>& samples,
                            std::string_view separator = kDefaultSeparator);

// Splits on the separator; segments are not trimmed. Throws CountMismatch
// when the split does not yield exactly expected_count segments.
std::vector<std::string> unbatch_document(std::string_view document, std::size_t expected_count,
                                          std::string_view separator = kDefaultSeparator);

// ---- pluggable backends ----------------------------------------------------

// Runs a shell command with the given lines on stdin and returns its
// stdout lines. Throws BackendError on non-zero exit or embedded newlines.
std::vector<std::string> run_command_lines(const std::string& command,
                                           const std::vector<std::string>& input_lines);

class TranslatorBackend {
  public:
    virtual ~TranslatorBackend() = default;

    // Must return exactly one target per source, order preserved. Throws
    // BackendError on failure; a wrong-length result is reported by
    // translate_batch as CountMismatch.
    virtual std::vector<std::string> translate(const std::vector<std::string>& texts,
                                               Direction direction) = 0;
};

// Spawns `command --source-lang X --target-lang Y`, feeds one sentence per
// line on stdin and reads one translation per line from stdout. A non-zero
// exit status is a BackendError for the whole batch.
class CommandBackend final : public TranslatorBackend {
  public:
    explicit CommandBackend(std::string command);
    std::vector<std::string> translate(const std::vector<std::string>& texts,
                                       Direction direction) override;

  private:
    std::string command_;
};

// Serves translations from a precomputed translation file, keyed by
// (source text, direction). Unknown sentences throw BackendError.
class ReplayBackend final : public TranslatorBackend {
  public:
    ReplayBackend(const std::vector<Sample>& corpus,
                  const std::vector<TranslationRecord>& translations);
    std::vector<std::string> translate(const std::vector<std::string>& texts,
                                       Direction direction) override;

  private:
    std::map<std::pair<std::string, std::string>, std::string> by_text_;
};

// Translates a batch, falling back to per-sentence calls when the backend
// answer does not align one-to-one with the input.
std::vector<std::string> translate_batch(TranslatorBackend& backend,
                                         const std::vector<std::string>& texts,
                                         Direction direction);

// Runs a backend over the corpus for the given directions; records ordered
// by (system_id, direction, sample_id).
std::vector<TranslationRecord> translate_corpus(TranslatorBackend& backend,
                                                const std::vector<Sample>& corpus,
                                                const std::vector<Direction>& directions,
                                                std::string_view system_id);

// ---- import ----------------------------------------------------------------

struct ImportIssue {
    enum class Kind { schema_error, unknown_sample_id };
    Kind kind = Kind::schema_error;
    std::size_t line = 0;  // 1-based line number in the source file
    std::string detail;
};

struct ImportResult {
    std::vector<TranslationRecord> records;  // every record joined to a sample
    std::vector<ImportIssue> issues;         // collected, not fail-fast
};

// Reads a translation record file (see records.hpp for the line format)
// and joins each record against the corpus by sample id.
ImportResult import_translations(const std::string& path, const std::vector<Sample>& corpus);

}  // namespace entity_guard
